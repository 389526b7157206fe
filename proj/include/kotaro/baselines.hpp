#pragma once

#include <span>
#include <variant>
#include <vector>

#include "kotaro/core.hpp"

namespace kotaro {

struct ExplicitGamma {
  double gamma = 1.0;
};

/// gamma = 1 / median of the per-sample neighbor scales for this n.
struct MedianHeuristic {
  int n_neighbors = 5;
};

using GammaPolicy = std::variant<ExplicitGamma, MedianHeuristic>;

/// Same pipeline as the adaptive model, with a single shared kernel rate.
struct FixedBandwidthModel {
  double gamma = 1.0;
  AdaptiveKernelModel expansion;  // every entry of expansion.scales.gamma equals `gamma`

  std::size_t dim() const { return expansion.dim(); }
  DecisionValue decision_function(std::span<const double> query) const {
    return expansion.decision_function(query);
  }
  std::vector<int> predict_batch(const Matrix& queries) const { return expansion.predict_batch(queries); }
};

FixedBandwidthModel fit_fixed(const Dataset& dataset, const GammaPolicy& policy = MedianHeuristic{},
                              const SolveStrategy& strategy = Pseudoinverse{});

/// Majority vote over the k nearest training samples. Distance ties go to
/// the lower index; vote ties go to -1.
class KnnModel {
 public:
  KnnModel(const Dataset& dataset, int k);

  int k() const { return k_; }
  std::size_t dim() const { return static_cast<std::size_t>(features_.cols()); }
  int predict(std::span<const double> query) const;
  std::vector<int> predict_batch(const Matrix& queries) const;

 private:
  Matrix features_;
  Labels labels_;
  int k_;
};

inline KnnModel fit_knn(const Dataset& dataset, int k) { return KnnModel(dataset, k); }

/// Constant predictor returning the more frequent training label (-1 on ties).
class MajorityModel {
 public:
  explicit MajorityModel(const Dataset& dataset);

  int label() const { return label_; }
  int predict(std::span<const double>) const { return label_; }
  std::vector<int> predict_batch(const Matrix& queries) const;

 private:
  int label_;
};

inline MajorityModel fit_majority(const Dataset& dataset) { return MajorityModel(dataset); }

}  // namespace kotaro
