#include "kotaro/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kotaro/error.hpp"

namespace kotaro {

namespace {

double median(Vector values) {
  auto* begin = values.data();
  auto* end = begin + values.size();
  const auto n = values.size();
  auto* mid = begin + n / 2;
  std::nth_element(begin, mid, end);
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(begin, mid);
  return 0.5 * (lower + upper);
}

}  // namespace

FixedBandwidthModel fit_fixed(const Dataset& dataset, const GammaPolicy& policy, const SolveStrategy& strategy) {
  dataset.validate();
  if (!dataset.has_both_classes()) {
    throw Error(ErrorCode::SingleClass, "training data must contain both labels");
  }
  double gamma = 0.0;
  FloorPolicy floor{};
  if (const auto* explicit_gamma = std::get_if<ExplicitGamma>(&policy)) {
    gamma = explicit_gamma->gamma;
  } else {
    const auto& heuristic = std::get<MedianHeuristic>(policy);
    const NeighborScales scales = compute_neighbor_scales(dataset.features, heuristic.n_neighbors, floor);
    gamma = 1.0 / median(scales.d);
  }
  NeighborScales scales = uniform_scales(dataset.size(), gamma);
  if (const auto* heuristic = std::get_if<MedianHeuristic>(&policy)) {
    scales.n_neighbors = heuristic->n_neighbors;
  }
  FixedBandwidthModel model;
  model.gamma = gamma;
  model.expansion = fit_with_scales(dataset, std::move(scales), strategy, floor);
  return model;
}

KnnModel::KnnModel(const Dataset& dataset, int k) : features_(dataset.features), labels_(dataset.labels), k_(k) {
  dataset.validate();
  if (k < 1 || static_cast<std::size_t>(k) > dataset.size()) {
    throw Error(ErrorCode::BadK, "k = " + std::to_string(k) + " must lie in [1, " +
                                     std::to_string(dataset.size()) + "]");
  }
}

int KnnModel::predict(std::span<const double> query) const {
  if (query.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query dimension does not match training data");
  }
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(labels_.size());
  for (Eigen::Index i = 0; i < features_.rows(); ++i) {
    ranked.emplace_back(squared_distance(row_span(features_, i), query), static_cast<std::size_t>(i));
  }
  const auto kth = ranked.begin() + k_;
  std::partial_sort(ranked.begin(), kth, ranked.end());
  int vote = 0;
  for (auto it = ranked.begin(); it != kth; ++it) vote += labels_[it->second];
  return vote > 0 ? kPositive : kNegative;
}

std::vector<int> KnnModel::predict_batch(const Matrix& queries) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(queries.rows()));
  for (Eigen::Index q = 0; q < queries.rows(); ++q) out.push_back(predict(row_span(queries, q)));
  return out;
}

MajorityModel::MajorityModel(const Dataset& dataset) {
  if (dataset.labels.empty()) {
    throw Error(ErrorCode::NDegenerate, "majority baseline needs at least one sample");
  }
  label_ = dataset.count(kPositive) > dataset.count(kNegative) ? kPositive : kNegative;
}

std::vector<int> MajorityModel::predict_batch(const Matrix& queries) const {
  return std::vector<int>(static_cast<std::size_t>(queries.rows()), label_);
}

}  // namespace kotaro
