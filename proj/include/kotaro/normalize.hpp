#pragma once

#include <string>

#include "kotaro/dataset.hpp"

namespace kotaro {

enum class Normalization { None, ZScore };

std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& text);

inline constexpr double kMinStddev = 1e-12;

/// Per-column statistics taken from a training set. stddev is the population
/// deviation (divide by N), floored at kMinStddev for constant columns.
struct NormalizationParams {
  Vector mean;
  Vector stddev;

  static NormalizationParams fit(const Matrix& features);
  /// Identity transform for `dim` columns.
  static NormalizationParams identity(std::size_t dim);

  void apply(Matrix& features) const;
  Matrix transformed(const Matrix& features) const;
};

}  // namespace kotaro
