#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kotaro/baselines.hpp"
#include "kotaro/core.hpp"
#include "kotaro/error.hpp"
#include "kotaro/eval.hpp"
#include "kotaro/io.hpp"
#include "kotaro/metrics.hpp"
#include "kotaro/synth.hpp"

namespace py = pybind11;
using namespace kotaro;

namespace {

Dataset to_dataset(const Matrix& x, const Labels& y) { return make_dataset(x, y); }

py::dict report_to_dict(const ExperimentReport& r) {
  py::list trials, aggregates;
  for (const auto& t : r.trials) {
    py::dict d;
    d["trial"] = t.trial;
    d["classifier"] = t.classifier;
    d["ratio_or_fold"] = t.ratio_or_fold;
    d["metrics"] = t.metrics;
    trials.append(d);
  }
  for (const auto& a : r.aggregates) {
    py::dict d;
    d["classifier"] = a.classifier;
    d["group"] = a.group;
    d["metric"] = a.metric;
    d["mean"] = a.summary.mean;
    d["std_error"] = a.summary.standard_error;
    d["count"] = a.summary.count;
    aggregates.append(d);
  }
  py::dict out;
  out["trials"] = trials;
  out["aggregates"] = aggregates;
  return out;
}

std::vector<ClassifierConfig> classifiers_from(const std::vector<std::string>& names, int n, int knn_k,
                                               const std::string& solver) {
  std::vector<ClassifierConfig> out;
  for (const auto& name : names) out.push_back(make_classifier(name, n, knn_k, parse_solve_strategy(solver)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_kotaro, m) {
  m.doc() = "Density-adaptive kernel classifier for imbalanced binary data";

  static py::exception<Error> error(m, "KotaroError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<AdaptiveKernelModel>(m, "Model")
      .def_property_readonly("weights", [](const AdaptiveKernelModel& k) { return k.weights; })
      .def_property_readonly("d", [](const AdaptiveKernelModel& k) { return k.scales.d; })
      .def_property_readonly("gamma", [](const AdaptiveKernelModel& k) { return k.scales.gamma; })
      .def_property_readonly("n_neighbors", [](const AdaptiveKernelModel& k) { return k.scales.n_neighbors; })
      .def_readonly("fit_residual", &AdaptiveKernelModel::fit_residual)
      .def_readonly("condition_estimate", &AdaptiveKernelModel::condition_estimate)
      .def_property_readonly("solver", [](const AdaptiveKernelModel& k) { return to_string(k.solve_strategy); })
      .def_property_readonly("dim", &AdaptiveKernelModel::dim)
      .def("decision_function", &AdaptiveKernelModel::decision_values, py::arg("X"))
      .def("predict", &AdaptiveKernelModel::predict_batch, py::arg("X"))
      .def("save", [](const AdaptiveKernelModel& k, const std::string& path) { save_model(k, path); }, py::arg("path"))
      .def("__len__", &AdaptiveKernelModel::size);

  m.def(
      "fit",
      [](const Matrix& x, const Labels& y, int n_neighbors, const std::string& solver) {
        return fit(to_dataset(x, y), {.n_neighbors = n_neighbors, .solve = parse_solve_strategy(solver)});
      },
      py::arg("X"), py::arg("y"), py::arg("n_neighbors") = 5, py::arg("solver") = "pinv:1e-10",
      "Fit on features X (N x M) and labels y in {-1, +1}.");
  m.def("load_model", [](const std::string& path) { return load_model(path); }, py::arg("path"));

  m.def(
      "neighbor_scales",
      [](const Matrix& x, int n) {
        const auto s = compute_neighbor_scales(x, n);
        return py::make_tuple(s.d, s.gamma);
      },
      py::arg("X"), py::arg("n_neighbors") = 5, "Returns (d, gamma).");
  m.def(
      "design_matrix", [](const Matrix& x, int n) { return build_design_matrix(x, compute_neighbor_scales(x, n)); },
      py::arg("X"), py::arg("n_neighbors") = 5);

  m.def(
      "generate",
      [](int dim, std::size_t total, double ratio, const std::string& flavor, std::uint64_t seed, int spheres,
         std::size_t test_per_class) {
        const auto scene = random_scene(dim, 5.0, spheres > 0 ? spheres : default_sphere_count(dim), seed);
        auto train_rng = make_rng(seed, {2});
        auto test_rng = make_rng(seed, {3});
        const auto f = parse_flavor(flavor);
        const auto train = generate(scene, {total, ratio, f}, train_rng);
        const auto test = generate_balanced_test(scene, f, test_per_class, test_rng);
        return py::make_tuple(train.features, train.labels, test.features, test.labels);
      },
      py::arg("dim") = 2, py::arg("total") = 300, py::arg("ratio") = 1.0, py::arg("flavor") = "ei",
      py::arg("seed") = 0, py::arg("spheres") = 0, py::arg("test_per_class") = 50,
      "Synthetic EI/DI train and balanced test sets: (X_train, y_train, X_test, y_test).");

  m.def(
      "metrics",
      [](const Labels& truth, const Labels& pred) { return metric_table(confusion(truth, pred)); },
      py::arg("y_true"), py::arg("y_pred"));
  m.def(
      "gmean", [](const Labels& truth, const Labels& pred) { return gmean(confusion(truth, pred)); },
      py::arg("y_true"), py::arg("y_pred"));
  m.def(
      "f1", [](const Labels& truth, const Labels& pred) { return f1(confusion(truth, pred)); }, py::arg("y_true"),
      py::arg("y_pred"));

  m.def(
      "stratified_kfold",
      [](const Labels& y, int k, std::uint64_t seed, bool allow_sparse_class) {
        return stratified_kfold(y, k, seed, allow_sparse_class).fold_index;
      },
      py::arg("y"), py::arg("k") = 5, py::arg("seed") = 0, py::arg("allow_sparse_class") = false,
      "Fold index for every sample.");

  m.def(
      "cross_validate",
      [](const Matrix& x, const Labels& y, const std::vector<std::string>& classifiers, int k, int repeats,
         std::uint64_t seed, const std::string& normalize, int n_neighbors, int knn_k, const std::string& solver) {
        CvOptions o{.k = k, .repeats = repeats, .seed = seed, .normalization = parse_normalization(normalize)};
        return report_to_dict(
            cross_validate(to_dataset(x, y), classifiers_from(classifiers, n_neighbors, knn_k, solver), o));
      },
      py::arg("X"), py::arg("y"), py::arg("classifiers") = std::vector<std::string>{"kotaro"}, py::arg("k") = 5,
      py::arg("repeats") = 1, py::arg("seed") = 0, py::arg("normalize") = "none", py::arg("n_neighbors") = 5,
      py::arg("knn_k") = 5, py::arg("solver") = "pinv:1e-10");

  m.def(
      "imbalance_sweep",
      [](int dim, const std::string& flavor, const std::vector<double>& ratios, std::size_t trials, std::size_t total,
         std::size_t test_per_class, std::uint64_t seed, const std::vector<std::string>& classifiers,
         int n_neighbors, int knn_k) {
        SweepConfig c;
        c.dim = dim;
        c.flavor = parse_flavor(flavor);
        c.ratios = ratios;
        c.trials = trials;
        c.total = total;
        c.test_per_class = test_per_class;
        c.seed = seed;
        c.classifiers = classifiers_from(classifiers, n_neighbors, knn_k, "pinv:1e-10");
        return report_to_dict(imbalance_sweep(c));
      },
      py::arg("dim") = 3, py::arg("flavor") = "ei", py::arg("ratios") = std::vector<double>{0.1, 0.3, 0.5, 1.0},
      py::arg("trials") = 20, py::arg("total") = 300, py::arg("test_per_class") = 50, py::arg("seed") = 0,
      py::arg("classifiers") = std::vector<std::string>{"kotaro", "fixed", "knn", "majority"},
      py::arg("n_neighbors") = 5, py::arg("knn_k") = 5);
}
