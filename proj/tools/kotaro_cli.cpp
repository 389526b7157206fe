// kotaro: command-line front end for the density-adaptive kernel classifier.
//
// Exit codes: 0 success, 2 invalid flags, 1 runtime failure. Diagnostics go
// to stderr; data only to the files named by the flags.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kotaro/baselines.hpp"
#include "kotaro/core.hpp"
#include "kotaro/error.hpp"
#include "kotaro/eval.hpp"
#include "kotaro/format.hpp"
#include "kotaro/io.hpp"
#include "kotaro/plot.hpp"
#include "kotaro/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitFlags = 2;

struct GenerateOptions {
  int dim = 2;
  int spheres = 0;
  std::size_t total = 300;
  double ratio = 1.0;
  std::string flavor = "ei";
  std::size_t test_per_class = 50;
  double box_side = 5.0;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct ModelOptions {
  int n_neighbors = 5;
  std::string solver = "pinv:1e-10";
};

struct TrainOptions {
  std::string data;
  std::string label_col = "label";
  std::string positive = "1";
  ModelOptions model;
  std::string out_model;
};

struct PredictOptions {
  std::string model;
  std::string data;
  std::string label_col = "label";
  std::string out;
};

struct CvCliOptions {
  std::string data;
  std::string label_col = "label";
  std::string positive = "1";
  int k = 5;
  int repeats = 1;
  std::vector<std::string> classifiers{"kotaro"};
  ModelOptions model;
  int knn_k = 5;
  std::string normalize = "none";
  bool allow_sparse_class = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct SweepOptions {
  int dim = 3;
  int spheres = 0;
  std::string flavor = "ei";
  std::vector<double> ratios{0.1, 0.3, 0.5, 1.0};
  std::size_t trials = 20;
  std::size_t total = 300;
  std::size_t test_per_class = 50;
  double box_side = 5.0;
  std::vector<std::string> classifiers{"kotaro", "fixed", "knn", "majority"};
  ModelOptions model;
  int knn_k = 5;
  std::uint64_t seed = 0;
  std::string out;
  std::string svg;
  std::string svg_metric = "accuracy";
};

struct BoundaryOptions {
  std::string model;
  int grid_res = 200;
  std::vector<double> bounds{0.0, 5.0, 0.0, 5.0};
  std::string out;
  std::string svg;
};

const auto kRatioCheck = CLI::Validator(
    [](std::string& text) -> std::string {
      const auto v = kotaro::parse_double(text);
      if (!v || !(*v > 0.0 && *v <= 1.0)) return "ratio must lie in (0, 1], got " + text;
      return {};
    },
    "RATIO in (0,1]");

const auto kFlavorCheck = CLI::IsMember({"ei", "di", "EI", "DI"});

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw kotaro::Error(kotaro::ErrorCode::IoError, "cannot write '" + path.string() + "'");
}

std::string echo_path_for(const std::string& file) { return file + ".config_echo.txt"; }

// Echo only the subcommand that ran, with every resolved default.
void write_echo(const CLI::App& sub, const fs::path& path) {
  write_text(path, "# kotaro " + sub.get_name() + " config echo\n" + sub.config_to_str(true, false));
}

void log(const std::string& line) { std::cerr << line << '\n'; }

kotaro::KotaroConfig kotaro_config(const ModelOptions& m) {
  kotaro::KotaroConfig config;
  config.n_neighbors = m.n_neighbors;
  config.solve = kotaro::parse_solve_strategy(m.solver);
  return config;
}

std::vector<kotaro::ClassifierConfig> make_classifiers(const std::vector<std::string>& names, const ModelOptions& m,
                                                       int knn_k) {
  const auto solve = kotaro::parse_solve_strategy(m.solver);
  std::vector<kotaro::ClassifierConfig> out;
  for (const auto& name : names) out.push_back(kotaro::make_classifier(name, m.n_neighbors, knn_k, solve));
  return out;
}

void log_aggregates(const kotaro::ExperimentReport& report, const std::string& metric) {
  for (const auto& a : report.aggregates) {
    if (a.metric != metric) continue;
    log(a.classifier + " [" + a.group + "] " + metric + " = " + kotaro::format_double(a.summary.mean) + " +- " +
        kotaro::format_double(a.summary.standard_error) + " (n=" + std::to_string(a.summary.count) + ")");
  }
}

template <class Write>
void write_file(const std::string& path, Write&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw kotaro::Error(kotaro::ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw kotaro::Error(kotaro::ErrorCode::IoError, "failed writing '" + path + "'");
}

// ---- subcommands -----------------------------------------------------------

void run_generate(const GenerateOptions& o, const CLI::App& sub) {
  const int spheres = o.spheres > 0 ? o.spheres : kotaro::default_sphere_count(o.dim);
  const auto flavor = kotaro::parse_flavor(o.flavor);
  const auto scene = kotaro::random_scene(o.dim, o.box_side, spheres, o.seed);
  auto train_rng = kotaro::make_rng(o.seed, {2});
  auto test_rng = kotaro::make_rng(o.seed, {3});
  const auto train = kotaro::generate(scene, {o.total, o.ratio, flavor}, train_rng);
  const auto test = kotaro::generate_balanced_test(scene, flavor, o.test_per_class, test_rng);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  kotaro::save_csv(train, dir / "train.csv");
  kotaro::save_csv(test, dir / "test.csv");
  kotaro::save_scene(scene, dir / "scene.txt");
  write_echo(sub, dir / "config_echo.txt");
  log("generated " + std::to_string(train.count(kotaro::kNegative)) + " majority / " +
      std::to_string(train.count(kotaro::kPositive)) + " minority training samples in " + dir.string());
}

void run_train(const TrainOptions& o, const CLI::App& sub) {
  const auto loaded = kotaro::load_csv(o.data, {o.label_col, o.positive, {}, kotaro::Normalization::None});
  const auto model = kotaro::fit(loaded.dataset, kotaro_config(o.model));
  kotaro::save_model(model, o.out_model);
  write_echo(sub, echo_path_for(o.out_model));
  log("trained on " + std::to_string(model.size()) + " samples, fit residual " +
      kotaro::format_double(model.fit_residual) + ", condition estimate " +
      (model.condition_estimate ? kotaro::format_double(*model.condition_estimate) : std::string("unavailable")));
}

void run_predict(const PredictOptions& o, const CLI::App& sub) {
  const auto model = kotaro::load_model(o.model);
  const kotaro::Matrix queries = kotaro::load_feature_csv(o.data, o.label_col);
  const kotaro::Vector values = model.decision_values(queries);
  write_file(o.out, [&](std::ostream& out) {
    out << "row,decision_value,predicted_label\n";
    for (Eigen::Index q = 0; q < values.size(); ++q) {
      out << q << ',' << kotaro::format_double(values(q)) << ',' << kotaro::label_from_value(values(q)) << '\n';
    }
  });
  write_echo(sub, echo_path_for(o.out));
}

void run_cv(const CvCliOptions& o, const CLI::App& sub) {
  const auto loaded = kotaro::load_csv(o.data, {o.label_col, o.positive, {}, kotaro::Normalization::None});
  kotaro::CvOptions cv;
  cv.k = o.k;
  cv.repeats = o.repeats;
  cv.seed = o.seed;
  cv.normalization = kotaro::parse_normalization(o.normalize);
  cv.allow_sparse_class = o.allow_sparse_class;
  const auto report = kotaro::cross_validate(loaded.dataset, make_classifiers(o.classifiers, o.model, o.knn_k), cv);
  kotaro::save_report(report, o.out);
  write_echo(sub, echo_path_for(o.out));
  log_aggregates(report, "gmean");
}

void run_sweep(const SweepOptions& o, const CLI::App& sub) {
  kotaro::SweepConfig config;
  config.dim = o.dim;
  config.flavor = kotaro::parse_flavor(o.flavor);
  config.sphere_count = o.spheres;
  config.box_side = o.box_side;
  config.ratios = o.ratios;
  config.total = o.total;
  config.test_per_class = o.test_per_class;
  config.trials = o.trials;
  config.seed = o.seed;
  config.classifiers = make_classifiers(o.classifiers, o.model, o.knn_k);
  config.log = log;
  const auto report = kotaro::imbalance_sweep(config);
  kotaro::save_report(report, o.out);
  if (!o.svg.empty()) {
    write_file(o.svg, [&](std::ostream& out) { kotaro::write_sweep_svg(report, o.svg_metric, out); });
  }
  write_echo(sub, echo_path_for(o.out));
  log_aggregates(report, "accuracy");
}

void run_boundary(const BoundaryOptions& o, const CLI::App& sub) {
  const auto model = kotaro::load_model(o.model);
  const kotaro::GridBounds bounds{o.bounds[0], o.bounds[1], o.bounds[2], o.bounds[3]};
  const auto grid = kotaro::decision_grid(model, o.grid_res, bounds);
  write_file(o.out, [&](std::ostream& out) { kotaro::write_grid_csv(grid, out); });
  if (!o.svg.empty()) {
    write_file(o.svg, [&](std::ostream& out) { kotaro::write_boundary_svg(grid, model, out); });
  }
  write_echo(sub, echo_path_for(o.out));
  log("negative regions: " + std::to_string(kotaro::count_label_components(grid, kotaro::kNegative)) +
      ", positive regions: " + std::to_string(kotaro::count_label_components(grid, kotaro::kPositive)));
}

void add_model_flags(CLI::App* sub, ModelOptions& m) {
  sub->add_option("--n", m.n_neighbors, "Neighbors used for each sample's kernel scale")->check(CLI::PositiveNumber);
  sub->add_option("--solver", m.solver, "pinv[:rcond] or ridge[:lambda]");
}

const auto kClassifierNames = CLI::IsMember({"kotaro", "fixed", "knn", "majority"});

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-adaptive kernel classifier for imbalanced binary data"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  GenerateOptions gen_o;
  auto* gen = app.add_subcommand("generate", "Draw a synthetic EI/DI train/test pair and its scene");
  gen->add_option("--dim", gen_o.dim, "Feature dimension")->check(CLI::Range(2, 1000));
  gen->add_option("--spheres", gen_o.spheres, "Sphere count (0: 2 for dim 2, else 3)")->check(CLI::NonNegativeNumber);
  gen->add_option("--total", gen_o.total, "Training samples")->check(CLI::Range(2, 100'000'000));
  gen->add_option("--ratio", gen_o.ratio, "Minority/majority ratio in (0,1]")->check(kRatioCheck);
  gen->add_option("--flavor", gen_o.flavor, "ei or di")->check(kFlavorCheck);
  gen->add_option("--test-per-class", gen_o.test_per_class, "Balanced test samples per class")
      ->check(CLI::PositiveNumber);
  gen->add_option("--box-side", gen_o.box_side, "Side of the box [0, s]^dim")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_o.seed, "Random seed");
  gen->add_option("--out", gen_o.out_dir, "Output directory")->required();

  TrainOptions train_o;
  auto* train = app.add_subcommand("train", "Fit a model on a labelled CSV");
  train->add_option("--data", train_o.data, "Training CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--label-col", train_o.label_col, "Label column name");
  train->add_option("--positive", train_o.positive, "Label value mapped to +1 (minority)");
  add_model_flags(train, train_o.model);
  train->add_option("--out-model", train_o.out_model, "Model file to write")->required();

  PredictOptions predict_o;
  auto* predict = app.add_subcommand("predict", "Score a CSV with a saved model");
  predict->add_option("--model", predict_o.model, "Model file")->required()->check(CLI::ExistingFile);
  predict->add_option("--data", predict_o.data, "CSV of queries (label column ignored if present)")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--label-col", predict_o.label_col, "Column to skip when present");
  predict->add_option("--out", predict_o.out, "Predictions CSV")->required();

  CvCliOptions cv_o;
  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  cv->add_option("--data", cv_o.data, "Labelled CSV")->required()->check(CLI::ExistingFile);
  cv->add_option("--label-col", cv_o.label_col, "Label column name");
  cv->add_option("--positive", cv_o.positive, "Label value mapped to +1 (minority)");
  cv->add_option("--k", cv_o.k, "Folds")->check(CLI::Range(2, 1'000'000));
  cv->add_option("--repeats", cv_o.repeats, "Repetitions with fresh fold draws")->check(CLI::PositiveNumber);
  cv->add_option("--classifier", cv_o.classifiers, "kotaro, fixed, knn, majority (comma-separated)")
      ->delimiter(',')
      ->check(kClassifierNames);
  add_model_flags(cv, cv_o.model);
  cv->add_option("--knn-k", cv_o.knn_k, "Neighbors for the knn baseline")->check(CLI::PositiveNumber);
  cv->add_option("--normalize", cv_o.normalize, "none or zscore (fitted on training folds)")
      ->check(CLI::IsMember({"none", "zscore"}));
  cv->add_flag("--allow-sparse-class", cv_o.allow_sparse_class, "Permit classes smaller than k");
  cv->add_option("--seed", cv_o.seed, "Random seed");
  cv->add_option("--out", cv_o.out, "Results CSV")->required();

  SweepOptions sweep_o;
  auto* sweep = app.add_subcommand("sweep", "Accuracy against imbalance ratio on synthetic scenes");
  sweep->add_option("--dim", sweep_o.dim, "Feature dimension")->check(CLI::Range(2, 1000));
  sweep->add_option("--spheres", sweep_o.spheres, "Sphere count (0: 2 for dim 2, else 3)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--flavor", sweep_o.flavor, "ei or di")->check(kFlavorCheck);
  sweep->add_option("--ratios", sweep_o.ratios, "Comma-separated ratios in (0,1]")->delimiter(',')->check(kRatioCheck);
  sweep->add_option("--trials", sweep_o.trials, "Independent trials")->check(CLI::PositiveNumber);
  sweep->add_option("--total", sweep_o.total, "Training samples per trial")->check(CLI::Range(2, 100'000'000));
  sweep->add_option("--test-per-class", sweep_o.test_per_class, "Balanced test samples per class")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--box-side", sweep_o.box_side, "Side of the box [0, s]^dim")->check(CLI::PositiveNumber);
  sweep->add_option("--classifiers", sweep_o.classifiers, "kotaro, fixed, knn, majority (comma-separated)")
      ->delimiter(',')
      ->check(kClassifierNames);
  add_model_flags(sweep, sweep_o.model);
  sweep->add_option("--knn-k", sweep_o.knn_k, "Neighbors for the knn baseline")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_o.seed, "Random seed");
  sweep->add_option("--out", sweep_o.out, "Results CSV")->required();
  sweep->add_option("--svg", sweep_o.svg, "Optional SVG plot of the curves");
  sweep->add_option("--svg-metric", sweep_o.svg_metric, "Metric plotted in the SVG")
      ->check(CLI::IsMember({"accuracy", "gmean", "f1"}));

  BoundaryOptions boundary_o;
  auto* boundary = app.add_subcommand("boundary", "Decision values on a 2-D grid");
  boundary->add_option("--model", boundary_o.model, "Model file (2-D)")->required()->check(CLI::ExistingFile);
  boundary->add_option("--grid-res", boundary_o.grid_res, "Grid nodes per axis")->check(CLI::Range(2, 5000));
  boundary->add_option("--bounds", boundary_o.bounds, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
  boundary->add_option("--out", boundary_o.out, "Grid CSV")->required();
  boundary->add_option("--svg", boundary_o.svg, "Optional SVG heatmap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFlags;
  }

  const auto& b = boundary_o.bounds;
  if (boundary->parsed() && (b.size() != 4 || !(b[1] > b[0]) || !(b[3] > b[2]))) {
    std::cerr << "--bounds: expected xmin,xmax,ymin,ymax with max > min\n";
    return kExitFlags;
  }

  try {
    if (gen->parsed()) run_generate(gen_o, *gen);
    else if (train->parsed()) run_train(train_o, *train);
    else if (predict->parsed()) run_predict(predict_o, *predict);
    else if (cv->parsed()) run_cv(cv_o, *cv);
    else if (sweep->parsed()) run_sweep(sweep_o, *sweep);
    else if (boundary->parsed()) run_boundary(boundary_o, *boundary);
  } catch (const std::exception& e) {
    std::cerr << "kotaro: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
