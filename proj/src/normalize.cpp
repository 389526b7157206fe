#include "kotaro/normalize.hpp"

#include <algorithm>
#include <cmath>

#include "kotaro/error.hpp"

namespace kotaro {

std::string to_string(Normalization n) { return n == Normalization::ZScore ? "zscore" : "none"; }

Normalization parse_normalization(const std::string& text) {
  if (text == "none") return Normalization::None;
  if (text == "zscore") return Normalization::ZScore;
  throw Error(ErrorCode::InvalidArgument, "normalization must be 'none' or 'zscore', got '" + text + "'");
}

NormalizationParams NormalizationParams::fit(const Matrix& features) {
  if (features.rows() < 1) throw Error(ErrorCode::NDegenerate, "cannot normalize an empty matrix");
  NormalizationParams p;
  const auto rows = static_cast<double>(features.rows());
  p.mean = features.colwise().sum().transpose() / rows;
  p.stddev.resize(features.cols());
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    const double var = (features.col(c).array() - p.mean(c)).square().sum() / rows;
    p.stddev(c) = std::max(std::sqrt(var), kMinStddev);
  }
  return p;
}

NormalizationParams NormalizationParams::identity(std::size_t dim) {
  const auto m = static_cast<Eigen::Index>(dim);
  return {Vector::Zero(m), Vector::Ones(m)};
}

void NormalizationParams::apply(Matrix& features) const {
  if (features.cols() != mean.size()) {
    throw Error(ErrorCode::DimensionMismatch, "normalization parameters have a different column count");
  }
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    features.col(c) = (features.col(c).array() - mean(c)) / stddev(c);
  }
}

Matrix NormalizationParams::transformed(const Matrix& features) const {
  Matrix out = features;
  apply(out);
  return out;
}

}  // namespace kotaro
