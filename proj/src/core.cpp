#include "kotaro/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kotaro/error.hpp"

namespace kotaro {

namespace {

double unchecked_sqdist(const double* a, const double* b, Eigen::Index m) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

void check_query(std::span<const double> query, std::size_t dim) {
  if (query.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(query.size()) +
                                                  " features, model expects " + std::to_string(dim));
  }
  for (double v : query) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "query contains non-finite values");
  }
}

}  // namespace

NeighborScales compute_neighbor_scales(const Matrix& features, int n, const FloorPolicy& floor) {
  const Eigen::Index count = features.rows();
  const Eigen::Index m = features.cols();
  if (count < 2) {
    throw Error(ErrorCode::NDegenerate, "neighbor scales need at least 2 samples");
  }
  if (n < 1 || n >= count) {
    throw Error(ErrorCode::BadNeighborCount, "n = " + std::to_string(n) + " must satisfy 1 <= n < N = " +
                                                 std::to_string(count));
  }
  if (!features.allFinite()) {
    throw Error(ErrorCode::NonFinite, "features contain non-finite values");
  }
  if (!(floor.relative_epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "floor relative_epsilon must be positive");
  }

  NeighborScales scales;
  scales.n_neighbors = n;
  scales.d.resize(count);

  std::vector<std::pair<double, Eigen::Index>> others;
  others.reserve(static_cast<std::size_t>(count - 1));
  for (Eigen::Index i = 0; i < count; ++i) {
    others.clear();
    const double* xi = features.data() + i * m;
    for (Eigen::Index j = 0; j < count; ++j) {
      if (j == i) continue;
      others.emplace_back(std::sqrt(unchecked_sqdist(xi, features.data() + j * m, m)), j);
    }
    // pair ordering breaks distance ties by lower index
    auto nth = others.begin() + (n - 1);
    std::nth_element(others.begin(), nth, others.end());
    scales.d(i) = nth->first;
  }

  double positive_sum = 0.0;
  Eigen::Index positive_count = 0;
  for (Eigen::Index i = 0; i < count; ++i) {
    if (scales.d(i) > 0.0) {
      positive_sum += scales.d(i);
      ++positive_count;
    }
  }
  if (positive_count == 0) {
    throw Error(ErrorCode::DegenerateGeometry, "every neighbor distance is zero (all points coincide)");
  }
  const double floor_value = floor.relative_epsilon * (positive_sum / static_cast<double>(positive_count));

  scales.floor_applied.assign(static_cast<std::size_t>(count), false);
  scales.gamma.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    if (scales.d(i) < floor_value) {
      scales.d(i) = floor_value;
      scales.floor_applied[static_cast<std::size_t>(i)] = true;
    }
    scales.gamma(i) = 1.0 / scales.d(i);
  }
  return scales;
}

NeighborScales uniform_scales(std::size_t count, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "gamma must be positive and finite");
  }
  NeighborScales scales;
  const auto n = static_cast<Eigen::Index>(count);
  scales.gamma = Vector::Constant(n, gamma);
  scales.d = Vector::Constant(n, 1.0 / gamma);
  scales.floor_applied.assign(count, false);
  return scales;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
  }
  return unchecked_sqdist(a.data(), b.data(), static_cast<Eigen::Index>(a.size()));
}

double kernel_value(std::span<const double> center, double gamma_center, std::span<const double> query) {
  if (!(gamma_center > 0.0) || !std::isfinite(gamma_center)) {
    throw Error(ErrorCode::InvalidArgument, "kernel rate must be positive and finite");
  }
  return std::exp(-gamma_center * squared_distance(center, query));
}

Matrix build_design_matrix(const Matrix& features, const NeighborScales& scales) {
  const Eigen::Index count = features.rows();
  const Eigen::Index m = features.cols();
  if (scales.gamma.size() != count) {
    throw Error(ErrorCode::ShapeMismatch, "scales were computed for a different sample count");
  }
  Matrix a(count, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const double* xj = features.data() + j * m;
    for (Eigen::Index i = 0; i < count; ++i) {
      a(j, i) = i == j ? 1.0 : std::exp(-scales.gamma(i) * unchecked_sqdist(features.data() + i * m, xj, m));
    }
  }
  return a;
}

DecisionValue AdaptiveKernelModel::decision_function(std::span<const double> query) const {
  check_query(query, dim());
  const Eigen::Index m = train_features.cols();
  double value = 0.0;
  for (Eigen::Index i = 0; i < train_features.rows(); ++i) {
    const double sq = unchecked_sqdist(train_features.data() + i * m, query.data(), m);
    value += weights(i) * std::exp(-scales.gamma(i) * sq);
  }
  return {value, label_from_value(value)};
}

Vector AdaptiveKernelModel::decision_values(const Matrix& queries) const {
  if (static_cast<std::size_t>(queries.cols()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "queries have " + std::to_string(queries.cols()) +
                                                  " columns, model expects " + std::to_string(dim()));
  }
  Vector out(queries.rows());
  for (Eigen::Index q = 0; q < queries.rows(); ++q) {
    out(q) = decision_function(row_span(queries, q)).value;
  }
  return out;
}

std::vector<int> AdaptiveKernelModel::predict_batch(const Matrix& queries) const {
  const Vector values = decision_values(queries);
  std::vector<int> labels(static_cast<std::size_t>(values.size()));
  for (Eigen::Index q = 0; q < values.size(); ++q) {
    labels[static_cast<std::size_t>(q)] = label_from_value(values(q));
  }
  return labels;
}

AdaptiveKernelModel fit_with_scales(const Dataset& dataset, NeighborScales scales,
                                    const SolveStrategy& strategy, const FloorPolicy& floor) {
  dataset.validate();
  if (!dataset.has_both_classes()) {
    throw Error(ErrorCode::SingleClass, "training data must contain both labels");
  }
  validate(strategy);

  const Matrix a = build_design_matrix(dataset.features, scales);
  Vector y(static_cast<Eigen::Index>(dataset.size()));
  for (std::size_t j = 0; j < dataset.size(); ++j) y(static_cast<Eigen::Index>(j)) = dataset.labels[j];

  SolveReport report = solve(a, y, strategy);

  AdaptiveKernelModel model;
  model.train_features = dataset.features;
  model.train_labels = dataset.labels;
  model.scales = std::move(scales);
  model.weights = std::move(report.w);
  model.solve_strategy = strategy;
  model.floor = floor;
  model.fit_residual = report.residual_max;
  model.condition_estimate = report.condition_estimate;
  return model;
}

AdaptiveKernelModel fit(const Dataset& dataset, const KotaroConfig& config) {
  dataset.validate();
  if (!dataset.has_both_classes()) {
    throw Error(ErrorCode::SingleClass, "training data must contain both labels");
  }
  NeighborScales scales = compute_neighbor_scales(dataset.features, config.n_neighbors, config.floor);
  return fit_with_scales(dataset, std::move(scales), config.solve, config.floor);
}

}  // namespace kotaro
