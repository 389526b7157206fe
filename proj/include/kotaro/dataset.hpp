#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kotaro {

// Samples are stored one per row so a sample is a contiguous span.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Binary labels are encoded as -1 (majority / negative) and +1
/// (minority / positive).
using Labels = std::vector<int>;

inline constexpr int kPositive = 1;
inline constexpr int kNegative = -1;

inline std::span<const double> row_span(const Matrix& m, Eigen::Index r) {
  return {m.data() + r * m.cols(), static_cast<std::size_t>(m.cols())};
}

struct Dataset {
  Matrix features;
  Labels labels;
  std::vector<std::string> feature_names;  // empty or one per column

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
  std::size_t count(int label) const;
  bool has_both_classes() const { return count(kPositive) > 0 && count(kNegative) > 0; }

  /// Throws kotaro::Error when the dataset breaks its invariants: fewer than
  /// two rows, no columns, label/row count mismatch, labels outside {-1,+1},
  /// non-finite features, or a feature_names list of the wrong length.
  void validate() const;

  /// Rows selected by `indices`, in that order.
  Dataset subset(std::span<const std::size_t> indices) const;
};

/// Builds a dataset from row-major features and labels, then validates it.
Dataset make_dataset(Matrix features, Labels labels, std::vector<std::string> names = {});

}  // namespace kotaro
