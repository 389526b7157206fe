#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kotaro/baselines.hpp"
#include "kotaro/core.hpp"
#include "kotaro/metrics.hpp"
#include "kotaro/normalize.hpp"
#include "kotaro/synth.hpp"

namespace kotaro {

struct FixedClassifier {
  GammaPolicy gamma = MedianHeuristic{};
  SolveStrategy solve = Pseudoinverse{};
};

struct KnnClassifier {
  int k = 5;
};

struct MajorityClassifier {};

using ClassifierConfig = std::variant<KotaroConfig, FixedClassifier, KnnClassifier, MajorityClassifier>;

/// "kotaro", "fixed", "knn" or "majority".
std::string classifier_name(const ClassifierConfig& config);

/// Builds a classifier by name. n_neighbors feeds both the adaptive model and
/// the fixed baseline's median heuristic.
ClassifierConfig make_classifier(const std::string& name, int n_neighbors = 5, int knn_k = 5,
                                 const SolveStrategy& solve = Pseudoinverse{});

std::vector<int> train_and_predict(const ClassifierConfig& config, const Dataset& train, const Matrix& queries);

/// accuracy, f1, gmean, precision, recall, specificity. Metrics whose ground
/// truth class is absent are NaN; precision with no positive predictions is 0.
std::map<std::string, double> metric_table(const ConfusionCounts& c);

struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_index;

  std::vector<std::size_t> test_indices(int fold) const;
  std::vector<std::size_t> train_indices(int fold) const;
};

/// Each class is shuffled and dealt round-robin, continuing the deal across
/// classes, so every fold holds floor or ceil of (class size / k) per class.
/// A class smaller than k raises TooFewMinority unless allow_sparse_class.
FoldAssignment stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed,
                                bool allow_sparse_class = false);

struct FoldSplit {
  Dataset train;
  Dataset test;
  NormalizationParams normalization;  // fitted on `train` rows only
};

FoldSplit make_fold_split(const Dataset& dataset, const FoldAssignment& folds, int fold,
                          Normalization normalization);

struct TrialRecord {
  std::string trial;
  std::string classifier;
  std::string ratio_or_fold;
  std::map<std::string, double> metrics;
};

struct MetricSummary {
  double mean = 0.0;
  double standard_error = 0.0;  // sample stddev / sqrt(count); 0 when count == 1
  std::size_t count = 0;
};

MetricSummary summarize(std::span<const double> values);

struct AggregateRecord {
  std::string classifier;
  std::string group;
  std::string metric;
  MetricSummary summary;
};

struct ExperimentReport {
  std::vector<TrialRecord> trials;
  std::vector<AggregateRecord> aggregates;

  const AggregateRecord* find(const std::string& classifier, const std::string& group,
                              const std::string& metric) const;
};

/// Rebuilds `aggregates` from `trials`, grouping by (classifier, group_of(trial)).
void aggregate(ExperimentReport& report, const std::function<std::string(const TrialRecord&)>& group_of);

struct CvOptions {
  int k = 5;
  int repeats = 1;
  std::uint64_t seed = 0;
  Normalization normalization = Normalization::None;
  bool allow_sparse_class = false;
};

inline constexpr const char* kCvGroup = "cv";

/// Every classifier sees the same folds. Trial rows are labelled
/// "r<repeat>f<fold>"; aggregates use group "cv". A failing fold aborts the
/// run with FoldFailed naming the repeat and fold.
ExperimentReport cross_validate(const Dataset& dataset, const std::vector<ClassifierConfig>& classifiers,
                                const CvOptions& options);

inline ExperimentReport cross_validate(const Dataset& dataset, const ClassifierConfig& classifier,
                                       const CvOptions& options) {
  return cross_validate(dataset, std::vector<ClassifierConfig>{classifier}, options);
}

struct SweepConfig {
  int dim = 3;
  Flavor flavor = Flavor::EI;
  int sphere_count = 0;  // 0 picks default_sphere_count(dim)
  double box_side = 5.0;
  std::vector<double> ratios{0.1, 0.3, 0.5, 1.0};
  std::size_t total = 300;
  std::size_t test_per_class = 50;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::vector<ClassifierConfig> classifiers;
  /// Called once per finished trial with a one-line summary.
  std::function<void(const std::string&)> log;
};

/// Each trial draws a fresh scene; each ratio gets its own training draw and
/// a balanced test draw from disjoint generator streams. Trial rows carry the
/// ratio in ratio_or_fold, and aggregates are grouped by ratio.
ExperimentReport imbalance_sweep(const SweepConfig& config);

}  // namespace kotaro
