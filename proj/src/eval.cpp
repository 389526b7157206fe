#include "kotaro/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kotaro/error.hpp"
#include "kotaro/format.hpp"

namespace kotaro {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string classifier_name(const ClassifierConfig& config) {
  return std::visit(Overloaded{
                        [](const KotaroConfig&) { return std::string("kotaro"); },
                        [](const FixedClassifier&) { return std::string("fixed"); },
                        [](const KnnClassifier&) { return std::string("knn"); },
                        [](const MajorityClassifier&) { return std::string("majority"); },
                    },
                    config);
}

ClassifierConfig make_classifier(const std::string& name, int n_neighbors, int knn_k, const SolveStrategy& solve) {
  if (name == "kotaro") return KotaroConfig{n_neighbors, solve, FloorPolicy{}};
  if (name == "fixed") return FixedClassifier{MedianHeuristic{n_neighbors}, solve};
  if (name == "knn") return KnnClassifier{knn_k};
  if (name == "majority") return MajorityClassifier{};
  throw Error(ErrorCode::InvalidArgument,
              "unknown classifier '" + name + "' (expected kotaro, fixed, knn or majority)");
}

std::vector<int> train_and_predict(const ClassifierConfig& config, const Dataset& train, const Matrix& queries) {
  return std::visit(Overloaded{
                        [&](const KotaroConfig& c) { return fit(train, c).predict_batch(queries); },
                        [&](const FixedClassifier& c) { return fit_fixed(train, c.gamma, c.solve).predict_batch(queries); },
                        [&](const KnnClassifier& c) { return fit_knn(train, c.k).predict_batch(queries); },
                        [&](const MajorityClassifier&) { return fit_majority(train).predict_batch(queries); },
                    },
                    config);
}

std::map<std::string, double> metric_table(const ConfusionCounts& c) {
  std::map<std::string, double> out;
  out["accuracy"] = c.total() > 0 ? accuracy(c) : kNaN;
  out["f1"] = f1(c);
  const bool both = c.positives() > 0 && c.negatives() > 0;
  out["gmean"] = both ? gmean(c) : kNaN;
  out["precision"] = c.tp + c.fp > 0 ? precision(c) : 0.0;
  out["recall"] = c.positives() > 0 ? recall(c) : kNaN;
  out["specificity"] = c.negatives() > 0 ? specificity(c) : kNaN;
  return out;
}

std::vector<std::size_t> FoldAssignment::test_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_index.size(); ++i) {
    if (fold_index[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_index.size(); ++i) {
    if (fold_index[i] != fold) out.push_back(i);
  }
  return out;
}

FoldAssignment stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed, bool allow_sparse_class) {
  if (k < 2 || static_cast<std::size_t>(k) > labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(k) + " must lie in [2, " +
                                                std::to_string(labels.size()) + "]");
  }
  Rng rng = make_rng(seed, {0xF01D});
  FoldAssignment out;
  out.k = k;
  out.fold_index.assign(labels.size(), -1);

  std::size_t offset = 0;
  for (int cls : {kPositive, kNegative}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) {
        members.push_back(i);
      } else if (labels[i] != kPositive && labels[i] != kNegative) {
        throw Error(ErrorCode::InvalidLabel, "labels must be -1 or +1 (index " + std::to_string(i) + ")");
      }
    }
    if (members.size() < static_cast<std::size_t>(k) && !allow_sparse_class) {
      throw Error(ErrorCode::TooFewMinority, "class " + std::to_string(cls) + " has " +
                                                 std::to_string(members.size()) + " samples, fewer than k = " +
                                                 std::to_string(k));
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t r = 0; r < members.size(); ++r) {
      out.fold_index[members[r]] = static_cast<int>((offset + r) % static_cast<std::size_t>(k));
    }
    offset = (offset + members.size()) % static_cast<std::size_t>(k);
  }
  return out;
}

FoldSplit make_fold_split(const Dataset& dataset, const FoldAssignment& folds, int fold,
                          Normalization normalization) {
  if (folds.fold_index.size() != dataset.size()) {
    throw Error(ErrorCode::LengthMismatch, "fold assignment does not match dataset size");
  }
  const auto train_idx = folds.train_indices(fold);
  const auto test_idx = folds.test_indices(fold);
  FoldSplit split{dataset.subset(train_idx), dataset.subset(test_idx), NormalizationParams::identity(dataset.dim())};
  if (normalization == Normalization::ZScore) {
    split.normalization = NormalizationParams::fit(split.train.features);
    split.normalization.apply(split.train.features);
    split.normalization.apply(split.test.features);
  }
  return split;
}

MetricSummary summarize(std::span<const double> values) {
  MetricSummary s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = kNaN;
    s.standard_error = kNaN;
    return s;
  }
  // Fixed left-to-right order keeps reported numbers bit-stable.
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) {
    s.standard_error = std::isnan(s.mean) ? kNaN : 0.0;
    return s;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  const double n = static_cast<double>(values.size());
  s.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

const AggregateRecord* ExperimentReport::find(const std::string& classifier, const std::string& group,
                                              const std::string& metric) const {
  for (const auto& a : aggregates) {
    if (a.classifier == classifier && a.group == group && a.metric == metric) return &a;
  }
  return nullptr;
}

void aggregate(ExperimentReport& report, const std::function<std::string(const TrialRecord&)>& group_of) {
  report.aggregates.clear();
  // (classifier, group) in order of first appearance; metrics sorted by name.
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& t : report.trials) {
    std::pair<std::string, std::string> key{t.classifier, group_of(t)};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(std::move(key));
  }
  for (const auto& [classifier, group] : keys) {
    std::map<std::string, std::vector<double>> columns;
    for (const auto& t : report.trials) {
      if (t.classifier != classifier || group_of(t) != group) continue;
      for (const auto& [metric, value] : t.metrics) columns[metric].push_back(value);
    }
    for (const auto& [metric, values] : columns) {
      report.aggregates.push_back({classifier, group, metric, summarize(values)});
    }
  }
}

ExperimentReport cross_validate(const Dataset& dataset, const std::vector<ClassifierConfig>& classifiers,
                                const CvOptions& options) {
  dataset.validate();
  if (classifiers.empty()) throw Error(ErrorCode::InvalidArgument, "no classifiers given");
  if (options.repeats < 1) throw Error(ErrorCode::InvalidArgument, "repeats must be at least 1");

  ExperimentReport report;
  int trial = 0;
  for (int r = 0; r < options.repeats; ++r) {
    const std::uint64_t fold_seed = make_rng(options.seed, {static_cast<std::uint64_t>(r)})();
    const FoldAssignment folds =
        stratified_kfold(dataset.labels, options.k, fold_seed, options.allow_sparse_class);
    for (int f = 0; f < options.k; ++f, ++trial) {
      const std::string fold_label = "r" + std::to_string(r) + "f" + std::to_string(f);
      const FoldSplit split = make_fold_split(dataset, folds, f, options.normalization);
      for (const auto& classifier : classifiers) {
        std::vector<int> predicted;
        try {
          predicted = train_and_predict(classifier, split.train, split.test.features);
        } catch (const Error& e) {
          throw Error(ErrorCode::FoldFailed, "repeat " + std::to_string(r) + " fold " + std::to_string(f) +
                                                 " (" + classifier_name(classifier) + "): " + e.what());
        }
        report.trials.push_back({std::to_string(trial), classifier_name(classifier), fold_label,
                                 metric_table(confusion(split.test.labels, predicted))});
      }
    }
  }
  aggregate(report, [](const TrialRecord&) { return std::string(kCvGroup); });
  return report;
}

ExperimentReport imbalance_sweep(const SweepConfig& config) {
  if (config.ratios.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one ratio");
  if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (config.classifiers.empty()) throw Error(ErrorCode::InvalidArgument, "no classifiers given");
  for (double ratio : config.ratios) {
    ImbalanceSpec{config.total, ratio, config.flavor}.validate();
  }
  const int spheres = config.sphere_count > 0 ? config.sphere_count : default_sphere_count(config.dim);

  ExperimentReport report;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t scene_seed = make_rng(config.seed, {1, t})();
    const HypersphereScene scene = random_scene(config.dim, config.box_side, spheres, scene_seed);
    std::ostringstream line;
    line << "trial " << t;
    for (std::size_t ri = 0; ri < config.ratios.size(); ++ri) {
      const double ratio = config.ratios[ri];
      Rng train_rng = make_rng(config.seed, {2, t, ri});
      Rng test_rng = make_rng(config.seed, {3, t, ri});
      const Dataset train = generate(scene, ImbalanceSpec{config.total, ratio, config.flavor}, train_rng);
      const Dataset test = generate_balanced_test(scene, config.flavor, config.test_per_class, test_rng);
      for (const auto& classifier : config.classifiers) {
        const auto predicted = train_and_predict(classifier, train, test.features);
        const ConfusionCounts c = confusion(test.labels, predicted);
        std::map<std::string, double> metrics{{"accuracy", accuracy(c)}, {"gmean", gmean(c)}, {"f1", f1(c)}};
        line << " " << classifier_name(classifier) << "@" << format_double(ratio) << "="
             << format_double(metrics["accuracy"]);
        report.trials.push_back({std::to_string(t), classifier_name(classifier), format_double(ratio),
                                 std::move(metrics)});
      }
    }
    if (config.log) config.log(line.str());
  }
  aggregate(report, [](const TrialRecord& t) { return t.ratio_or_fold; });
  return report;
}

}  // namespace kotaro
