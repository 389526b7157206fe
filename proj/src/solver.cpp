#include "kotaro/solver.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "kotaro/error.hpp"
#include "kotaro/format.hpp"

namespace kotaro {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

SolveReport solve_pinv(const Matrix& a, const Vector& y, const Pseudoinverse& p) {
  // Column-major copy: Eigen's SVD kernels expect it.
  const Eigen::MatrixXd a_cm = a;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a_cm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();

  SolveReport report;
  report.strategy_used = p;
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = p.rcond * sigma_max;

  Vector uty = svd.matrixU().transpose() * y;
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff && sigma(k) > 0.0) {
      uty(k) /= sigma(k);
      ++rank;
    } else {
      uty(k) = 0.0;
    }
  }
  report.w = svd.matrixV() * uty;
  report.rank_estimate = rank;

  const double sigma_min = sigma.size() > 0 ? sigma(sigma.size() - 1) : 0.0;
  report.condition_estimate =
      sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();
  return report;
}

SolveReport solve_ridge(const Matrix& a, const Vector& y, const Ridge& r) {
  const Eigen::MatrixXd a_cm = a;
  Eigen::MatrixXd normal = a_cm.transpose() * a_cm;
  normal.diagonal().array() += r.lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "ridge normal matrix is not positive definite");
  }
  SolveReport report;
  report.strategy_used = r;
  report.w = llt.solve(a_cm.transpose() * y);
  report.rank_estimate = static_cast<int>(a.rows());
  return report;
}

}  // namespace

void validate(const SolveStrategy& strategy) {
  std::visit(Overloaded{
                 [](const Pseudoinverse& p) {
                   if (!(p.rcond > 0.0 && p.rcond < 1.0)) {
                     throw Error(ErrorCode::InvalidArgument, "rcond must lie in (0, 1)");
                   }
                 },
                 [](const Ridge& r) {
                   if (!(r.lambda > 0.0) || !std::isfinite(r.lambda)) {
                     throw Error(ErrorCode::InvalidArgument, "ridge lambda must be positive");
                   }
                 },
             },
             strategy);
}

std::string to_string(const SolveStrategy& strategy) {
  return std::visit(Overloaded{
                        [](const Pseudoinverse& p) { return "pinv:" + format_double(p.rcond); },
                        [](const Ridge& r) { return "ridge:" + format_double(r.lambda); },
                    },
                    strategy);
}

SolveStrategy parse_solve_strategy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::optional<double> param;
  if (colon != std::string::npos) {
    param = parse_double(text.substr(colon + 1));
    if (!param) {
      throw Error(ErrorCode::InvalidArgument, "bad solver parameter in '" + text + "'");
    }
  }
  SolveStrategy out;
  if (kind == "pinv" || kind == "pseudoinverse") {
    out = Pseudoinverse{param.value_or(Pseudoinverse{}.rcond)};
  } else if (kind == "ridge") {
    out = Ridge{param.value_or(Ridge{}.lambda)};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown solver '" + kind + "' (expected pinv or ridge)");
  }
  validate(out);
  return out;
}

SolveReport solve(const Matrix& a, const Vector& y, const SolveStrategy& strategy) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "solve expects a square matrix");
  }
  if (y.size() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "right-hand side length does not match matrix");
  }
  if (!a.allFinite() || !y.allFinite()) {
    throw Error(ErrorCode::NonFinite, "solve inputs contain non-finite values");
  }
  validate(strategy);

  SolveReport report = std::visit(
      Overloaded{
          [&](const Pseudoinverse& p) { return solve_pinv(a, y, p); },
          [&](const Ridge& r) { return solve_ridge(a, y, r); },
      },
      strategy);

  if (!report.w.allFinite()) {
    throw Error(ErrorCode::NonFinite, "solve produced non-finite weights");
  }
  report.residual_max = a.rows() == 0 ? 0.0 : (a * report.w - y).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace kotaro
