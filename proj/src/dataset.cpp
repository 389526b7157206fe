#include "kotaro/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "kotaro/error.hpp"

namespace kotaro {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NDegenerate: return "NDegenerate";
    case ErrorCode::BadNeighborCount: return "BadNeighborCount";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::ClassAbsent: return "ClassAbsent";
    case ErrorCode::UndefinedMetric: return "UndefinedMetric";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::TooFewMinority: return "TooFewMinority";
    case ErrorCode::FoldFailed: return "FoldFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MultipleNegativeValues: return "MultipleNegativeValues";
    case ErrorCode::NonNumericFeature: return "NonNumericFeature";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::size_t Dataset::count(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void Dataset::validate() const {
  const auto n = static_cast<std::size_t>(features.rows());
  if (n < 2) {
    throw Error(ErrorCode::NDegenerate, "dataset needs at least 2 samples, got " + std::to_string(n));
  }
  if (features.cols() < 1) {
    throw Error(ErrorCode::ShapeMismatch, "dataset has no feature columns");
  }
  if (labels.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "labels length " + std::to_string(labels.size()) +
                                               " != rows " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != kPositive && labels[i] != kNegative) {
      throw Error(ErrorCode::InvalidLabel,
                  "label at row " + std::to_string(i) + " is " + std::to_string(labels[i]));
    }
  }
  if (!features.allFinite()) {
    throw Error(ErrorCode::NonFinite, "features contain non-finite values");
  }
  if (!feature_names.empty() && feature_names.size() != dim()) {
    throw Error(ErrorCode::ShapeMismatch, "feature_names length does not match column count");
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
  out.labels.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) = features.row(static_cast<Eigen::Index>(indices[r]));
    out.labels.push_back(labels[indices[r]]);
  }
  out.feature_names = feature_names;
  return out;
}

Dataset make_dataset(Matrix features, Labels labels, std::vector<std::string> names) {
  Dataset ds{std::move(features), std::move(labels), std::move(names)};
  ds.validate();
  return ds;
}

}  // namespace kotaro
