#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kotaro/dataset.hpp"
#include "kotaro/solver.hpp"

namespace kotaro {

/// Duplicate points give a zero neighbor distance. Distances below
/// relative_epsilon * mean(positive raw distances) are raised to that floor.
struct FloorPolicy {
  double relative_epsilon = 1e-8;
};

struct NeighborScales {
  Vector d;      // max distance to the n nearest other samples, floored
  Vector gamma;  // 1 / d
  int n_neighbors = 0;
  std::vector<bool> floor_applied;

  std::size_t size() const { return static_cast<std::size_t>(d.size()); }
};

/// For every row i, d[i] is the largest Euclidean distance among its n
/// nearest neighbors (i itself excluded; ties broken by lower index).
NeighborScales compute_neighbor_scales(const Matrix& features, int n, const FloorPolicy& floor = {});

/// Every row gets the same rate; used by the fixed-bandwidth baseline.
NeighborScales uniform_scales(std::size_t count, double gamma);

double squared_distance(std::span<const double> a, std::span<const double> b);

/// exp(-gamma_center * |query - center|^2)
double kernel_value(std::span<const double> center, double gamma_center, std::span<const double> query);

/// A(j, i) = k(x_i, x_j): row j is the evaluation point, column i the kernel
/// center, so A w = y restates y_j = sum_i w_i k(x_i, x_j). Not symmetric
/// unless all rates are equal.
Matrix build_design_matrix(const Matrix& features, const NeighborScales& scales);

struct DecisionValue {
  double value = 0.0;
  int predicted_label = kNegative;
};

/// +1 iff value > 0; zero maps to -1.
constexpr int label_from_value(double value) { return value > 0.0 ? kPositive : kNegative; }

struct KotaroConfig {
  int n_neighbors = 5;
  SolveStrategy solve = Pseudoinverse{};
  FloorPolicy floor{};
};

/// A fitted signed superposition of per-sample Gaussian kernels.
/// Immutable after fit; safe for concurrent readers.
struct AdaptiveKernelModel {
  Matrix train_features;
  Labels train_labels;
  NeighborScales scales;
  Vector weights;
  SolveStrategy solve_strategy = Pseudoinverse{};
  FloorPolicy floor{};
  double fit_residual = 0.0;
  std::optional<double> condition_estimate;

  std::size_t dim() const { return static_cast<std::size_t>(train_features.cols()); }
  std::size_t size() const { return train_labels.size(); }

  DecisionValue decision_function(std::span<const double> query) const;
  std::vector<int> predict_batch(const Matrix& queries) const;
  /// Raw decision values for each query row.
  Vector decision_values(const Matrix& queries) const;
};

AdaptiveKernelModel fit(const Dataset& dataset, const KotaroConfig& config = {});

/// Shared by the adaptive and fixed-bandwidth models: scales are supplied by
/// the caller, then the design matrix is built and solved.
AdaptiveKernelModel fit_with_scales(const Dataset& dataset, NeighborScales scales,
                                    const SolveStrategy& strategy, const FloorPolicy& floor);

inline DecisionValue decision_function(const AdaptiveKernelModel& model, std::span<const double> query) {
  return model.decision_function(query);
}

inline std::vector<int> predict_batch(const AdaptiveKernelModel& model, const Matrix& queries) {
  return model.predict_batch(queries);
}

}  // namespace kotaro
