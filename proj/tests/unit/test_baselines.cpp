#include "doctest.h"
#include "helpers.hpp"
#include "kotaro/baselines.hpp"
#include "kotaro/error.hpp"

using namespace kotaro;
using testing_util::to_matrix;

TEST_CASE("median heuristic on three points") {
  const auto ds = make_dataset(to_matrix({{0}, {1}, {3}}), {1, 1, -1});
  CHECK(fit_fixed(ds, MedianHeuristic{1}).gamma == 1.0);
  const auto two = make_dataset(to_matrix({{0, 0}, {3, 1}}), {1, -1});
  const auto m = fit_fixed(two, ExplicitGamma{0.25});
  CHECK(m.decision_function(row_span(two.features, 0)).predicted_label == 1);
  CHECK(m.decision_function(row_span(two.features, 1)).predicted_label == -1);
  for (Eigen::Index i = 0; i < 2; ++i) CHECK(m.expansion.scales.gamma(i) == 0.25);
}

TEST_CASE("property: equal scales reduce to the fixed baseline") {
  // on a regular lattice with n = 1 every d equals the spacing
  auto rng = make_rng(3);
  for (int t = 0; t < 10; ++t) {
    const double h = static_cast<double>(2 + rng() % 14) / 8.0;
    oracle::Grid pts;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 4; ++j) pts.push_back({h * i, h * j});
    const auto ds = make_dataset(to_matrix(pts), testing_util::random_labels(pts.size(), rng));
    const auto adaptive = fit(ds, {.n_neighbors = 1});
    for (Eigen::Index i = 0; i < adaptive.scales.d.size(); ++i) REQUIRE(adaptive.scales.d(i) == adaptive.scales.d(0));
    const auto fixed = fit_fixed(ds, ExplicitGamma{1.0 / adaptive.scales.d(0)});
    const Matrix q = testing_util::uniform_points(300, 2, 5.0 * h, rng);
    CHECK(adaptive.predict_batch(q) == fixed.predict_batch(q));
  }
}

TEST_CASE("knn votes") {
  const auto ds = make_dataset(to_matrix({{0}, {1}, {2}, {10}, {11}}), {1, 1, -1, -1, -1});
  const auto k1 = fit_knn(ds, 1);
  for (Eigen::Index r = 0; r < 5; ++r) CHECK(k1.predict(row_span(ds.features, r)) == ds.labels[static_cast<std::size_t>(r)]);
  const auto k3 = fit_knn(ds, 3);
  const std::vector<double> q0{0.4}, q1{1.9}, q2{9.0};
  CHECK(k3.predict(q0) == 1);   // 0,1,2 -> +,+,-
  CHECK(k3.predict(q1) == 1);   // 2,1,0 -> -,+,+
  CHECK(k3.predict(q2) == -1);  // 10,11,2
  const auto k5 = fit_knn(ds, 5);
  CHECK(k5.predict(q0) == -1);
  const auto k2 = fit_knn(ds, 2);
  const std::vector<double> mid{1.6};
  CHECK(k2.predict(mid) == -1);  // 2 and 1 tie -> -1
  CHECK_THROWS_AS(fit_knn(ds, 6), Error);
  CHECK_THROWS_AS(fit_knn(ds, 0), Error);
}

TEST_CASE("majority baseline") {
  auto rng = make_rng(4);
  Labels y(100, kNegative);
  for (int i = 0; i < 10; ++i) y[static_cast<std::size_t>(i)] = kPositive;
  const auto ds = make_dataset(testing_util::uniform_points(100, 2, 1.0, rng), y);
  const auto m = fit_majority(ds);
  CHECK(m.label() == -1);
  const auto tie = make_dataset(to_matrix({{0}, {1}}), {1, -1});
  CHECK(fit_majority(tie).label() == -1);
  Labels mostly_pos(100, kPositive);
  mostly_pos[0] = kNegative;
  CHECK(fit_majority(make_dataset(ds.features, mostly_pos)).label() == 1);
}
