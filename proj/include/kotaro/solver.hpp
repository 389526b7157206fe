#pragma once

#include <optional>
#include <string>
#include <variant>

#include "kotaro/dataset.hpp"

namespace kotaro {

/// Minimum-norm least squares; singular values below rcond * sigma_max are dropped.
struct Pseudoinverse {
  double rcond = 1e-10;
};

/// Normal-equations ridge: (A^T A + lambda I) w = A^T y.
struct Ridge {
  double lambda = 1e-6;
};

using SolveStrategy = std::variant<Pseudoinverse, Ridge>;

/// Throws InvalidArgument unless rcond is in (0, 1) or lambda > 0.
void validate(const SolveStrategy& strategy);

/// "pinv:1e-10" / "ridge:1e-06"; parse_solve_strategy accepts the same text and
/// also bare "pinv" / "ridge" with default parameters.
std::string to_string(const SolveStrategy& strategy);
SolveStrategy parse_solve_strategy(const std::string& text);

struct SolveReport {
  Vector w;
  double residual_max = 0.0;  // max_j |(A w - y)_j|, recomputed after the solve
  int rank_estimate = 0;
  SolveStrategy strategy_used;
  /// sigma_max / sigma_min from the SVD; absent for ridge solves.
  std::optional<double> condition_estimate;
};

SolveReport solve(const Matrix& a, const Vector& y, const SolveStrategy& strategy = Pseudoinverse{});

}  // namespace kotaro
