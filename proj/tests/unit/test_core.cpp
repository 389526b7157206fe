#include <cmath>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "kotaro/core.hpp"
#include "kotaro/error.hpp"

using namespace kotaro;
using testing_util::to_matrix;

namespace {

Matrix line(std::initializer_list<double> xs) {
  Matrix m(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index r = 0;
  for (double x : xs) m(r++, 0) = x;
  return m;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected kotaro::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("neighbor scales on three points in a line") {
  const Matrix x = line({0, 1, 3});
  auto s = compute_neighbor_scales(x, 1);
  CHECK(s.d(0) == 1.0);
  CHECK(s.d(1) == 1.0);
  CHECK(s.d(2) == 2.0);
  CHECK(s.gamma(2) == 0.5);

  s = compute_neighbor_scales(x, 2);
  CHECK(s.d(0) == 3.0);
  CHECK(s.d(1) == 2.0);
  CHECK(s.d(2) == 3.0);
  CHECK(s.gamma(0) == doctest::Approx(1.0 / 3.0));
  CHECK(s.gamma(1) == 0.5);
}

TEST_CASE("neighbor scales match brute force") {
  auto rng = make_rng(11);
  for (int t = 0; t < 30; ++t) {
    const Matrix x = testing_util::uniform_points(5 + t, 1 + t % 4, 5.0, rng);
    for (int n : {1, 2, 4}) {
      const auto s = compute_neighbor_scales(x, n);
      const auto expect = oracle::neighbor_scales(testing_util::to_grid(x), n);
      for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(s.d(static_cast<Eigen::Index>(i)) == doctest::Approx(expect[i]).epsilon(1e-14));
        CHECK(s.gamma(static_cast<Eigen::Index>(i)) == 1.0 / s.d(static_cast<Eigen::Index>(i)));
      }
    }
  }
}

TEST_CASE("duplicates are floored") {
  const Matrix x = line({0, 0, 2, 5});
  const auto s = compute_neighbor_scales(x, 1);
  const double floor = 1e-8 * (2.0 + 3.0) / 2.0;
  CHECK(s.d(0) == doctest::Approx(floor));
  CHECK(s.d(1) == doctest::Approx(floor));
  CHECK(s.floor_applied[0]);
  CHECK(s.floor_applied[1]);
  CHECK_FALSE(s.floor_applied[2]);
  CHECK(s.d(2) == 2.0);
  CHECK(std::isfinite(s.gamma(0)));
}

TEST_CASE("neighbor scale errors") {
  CHECK(code_of([] { compute_neighbor_scales(line({1, 1, 1}), 1); }) == ErrorCode::DegenerateGeometry);
  CHECK(code_of([] { compute_neighbor_scales(line({1}), 1); }) == ErrorCode::NDegenerate);
  CHECK(code_of([] { compute_neighbor_scales(line({0, 1, 2}), 3); }) == ErrorCode::BadNeighborCount);
  CHECK(code_of([] { compute_neighbor_scales(line({0, 1, 2}), 0); }) == ErrorCode::BadNeighborCount);
}

TEST_CASE("kernel values") {
  const std::vector<double> zero{0.0}, one{1.0}, two{2.0};
  CHECK(kernel_value(one, 3.0, one) == 1.0);
  CHECK(kernel_value(zero, 1.0, one) == doctest::Approx(0.3678794).epsilon(1e-7));
  CHECK(kernel_value(zero, 0.5, two) == doctest::Approx(0.1353353).epsilon(1e-7));
  CHECK(kernel_value(zero, 1.0, one) == std::exp(-1.0));
}

TEST_CASE("design matrix is asymmetric under adaptive scales") {
  const Matrix x = line({0, 1, 3});
  const Matrix a = build_design_matrix(x, compute_neighbor_scales(x, 1));
  CHECK(a(2, 0) == doctest::Approx(std::exp(-9.0)).epsilon(1e-14));
  CHECK(a(0, 2) == doctest::Approx(std::exp(-4.5)).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) CHECK(a(i, i) == 1.0);
}

TEST_CASE("design matrix symmetric under equal scales and entries in (0,1]") {
  auto rng = make_rng(5);
  const Matrix x = testing_util::uniform_points(12, 3, 2.0, rng);
  const Matrix a = build_design_matrix(x, uniform_scales(12, 0.7));
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  const Matrix b = build_design_matrix(x, compute_neighbor_scales(x, 3));
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    CHECK(b(j, j) == 1.0);
    for (Eigen::Index i = 0; i < b.cols(); ++i) {
      CHECK(b(j, i) > 0.0);
      CHECK(b(j, i) <= 1.0);
    }
  }
}

TEST_CASE("two points interpolate") {
  const auto ds = make_dataset(to_matrix({{0.0, 0.0}, {1.0, 2.0}}), {1, -1});
  const auto m = fit(ds, {.n_neighbors = 1});
  CHECK(m.decision_function(row_span(ds.features, 0)).predicted_label == 1);
  CHECK(m.decision_function(row_span(ds.features, 1)).predicted_label == -1);
}

TEST_CASE("three point fit matches elimination oracle") {
  const Matrix x = line({0, 1, 3});
  const auto ds = make_dataset(x, {1, 1, -1});
  const auto m = fit(ds, {.n_neighbors = 1});
  CHECK(m.fit_residual <= 1e-8);
  oracle::Grid a(3, std::vector<double>(3));
  const std::vector<double> pts{0, 1, 3}, d{1, 1, 2};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) a[j][i] = std::exp(-(1.0 / d[i]) * (pts[i] - pts[j]) * (pts[i] - pts[j]));
  const auto w = oracle::gauss_solve(a, {1, 1, -1});
  REQUIRE(w);
  for (int i = 0; i < 3; ++i) CHECK(m.weights(i) == doctest::Approx((*w)[i]).epsilon(1e-10));
}

TEST_CASE("single class and dimension errors") {
  const auto ds = make_dataset(line({0, 1, 3}), {1, 1, 1});
  CHECK(code_of([&] { fit(ds, {.n_neighbors = 1}); }) == ErrorCode::SingleClass);
  const auto ok = make_dataset(line({0, 1, 3}), {1, 1, -1});
  const auto m = fit(ok, {.n_neighbors = 1});
  const std::vector<double> q{1.0, 2.0};
  CHECK(code_of([&] { m.decision_function(q); }) == ErrorCode::DimensionMismatch);
  const std::vector<double> bad{std::nan("")};
  CHECK(code_of([&] { m.decision_function(bad); }) == ErrorCode::NonFinite);
}

TEST_CASE("far query gives zero and maps to -1") {
  const auto ds = make_dataset(line({0, 1, 3}), {1, 1, -1});
  const auto m = fit(ds, {.n_neighbors = 1});
  const std::vector<double> far{1e6};
  const auto v = m.decision_function(far);
  CHECK(v.value == 0.0);
  CHECK(v.predicted_label == -1);
  static_assert(label_from_value(0.0) == -1);
  static_assert(label_from_value(1e-300) == 1);
}

TEST_CASE("decision values match brute-force sum and batch matches loop") {
  auto rng = make_rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto ds = testing_util::random_dataset(20, 3, rng);
    const auto m = fit(ds, {.n_neighbors = 3});
    const Matrix q = testing_util::uniform_points(25, 3, 5.0, rng);
    const auto labels = m.predict_batch(q);
    const Vector values = m.decision_values(q);
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      const auto single = m.decision_function(row_span(q, r));
      const double expect = oracle::kernel_sum(testing_util::to_grid(ds.features), testing_util::to_std(m.scales.gamma),
                                               testing_util::to_std(m.weights), testing_util::to_grid(q.row(r))[0]);
      CHECK(single.value == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
      CHECK(values(r) == single.value);
      CHECK(labels[static_cast<std::size_t>(r)] == single.predicted_label);
    }
    const Matrix one = q.topRows(1);
    CHECK(m.predict_batch(one)[0] == m.decision_function(row_span(q, 0)).predicted_label);
  }
}

TEST_CASE("property: permutation equivariance") {
  auto rng = make_rng(31);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 8 + static_cast<std::size_t>(t);
    const auto ds = testing_util::random_dataset(n, 2, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto a = fit(ds, {.n_neighbors = 2});
    const auto b = fit(ds.subset(perm), {.n_neighbors = 2});
    if (!a.condition_estimate || *a.condition_estimate > 1e8) continue;
    for (std::size_t i = 0; i < n; ++i)
      CHECK(b.weights(static_cast<Eigen::Index>(i)) ==
            doctest::Approx(a.weights(static_cast<Eigen::Index>(perm[i]))).epsilon(1e-8).scale(1.0));
    const Matrix q = testing_util::uniform_points(20, 2, 5.0, rng);
    CHECK((a.decision_values(q) - b.decision_values(q)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("property: rigid motion invariance") {
  auto rng = make_rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto ds = testing_util::random_dataset(15, 2, rng);
    const double theta = 6.283185307179586 * uniform01(rng);
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Eigen::RowVector2d shift(10.0 * uniform01(rng) - 5.0, 10.0 * uniform01(rng) - 5.0);
    auto moved = ds;
    moved.features = (ds.features * rot.transpose()).rowwise() + shift;
    const auto a = fit(ds, {.n_neighbors = 3});
    const auto b = fit(moved, {.n_neighbors = 3});
    if (!a.condition_estimate || *a.condition_estimate > 1e4) continue;
    for (Eigen::Index i = 0; i < a.weights.size(); ++i)
      CHECK(b.weights(i) == doctest::Approx(a.weights(i)).epsilon(1e-10).scale(1.0));
    for (Eigen::Index i = 0; i < a.scales.d.size(); ++i) {
      CHECK(b.scales.d(i) == doctest::Approx(a.scales.d(i)).epsilon(1e-10));
      CHECK(b.scales.gamma(i) == doctest::Approx(a.scales.gamma(i)).epsilon(1e-10));
    }
    const Matrix da = build_design_matrix(ds.features, a.scales);
    const Matrix db = build_design_matrix(moved.features, b.scales);
    CHECK((da - db).cwiseAbs().maxCoeff() <= 1e-10);
    const Matrix q = testing_util::uniform_points(20, 2, 5.0, rng);
    const Matrix qm = (q * rot.transpose()).rowwise() + shift;
    const Vector fa = a.decision_values(q), fb = b.decision_values(qm);
    for (Eigen::Index r = 0; r < q.rows(); ++r) CHECK(fb(r) == doctest::Approx(fa(r)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("property: fitting is deterministic") {
  auto rng = make_rng(51);
  const auto ds = testing_util::random_dataset(30, 3, rng);
  const auto a = fit(ds);
  const auto b = fit(ds);
  CHECK(a.weights == b.weights);
  CHECK(a.scales.d == b.scales.d);
  CHECK(a.fit_residual == b.fit_residual);
}
