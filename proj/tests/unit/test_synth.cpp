#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "kotaro/error.hpp"
#include "kotaro/synth.hpp"

using namespace kotaro;

namespace {

HypersphereScene single_sphere(int dim, Vector center, double radius, double box = 5.0) {
  HypersphereScene s;
  s.dim = dim;
  s.box_side = box;
  s.spheres.push_back({std::move(center), radius});
  return s;
}

}  // namespace

TEST_CASE("scene defaults and determinism") {
  CHECK(default_sphere_count(2) == 2);
  CHECK(default_sphere_count(3) == 3);
  CHECK(default_sphere_count(9) == 3);
  const auto a = random_scene(2, 5.0, 2, 17);
  const auto b = random_scene(2, 5.0, 2, 17);
  REQUIRE(a.spheres.size() == 2);
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(a.spheres[s].center == b.spheres[s].center);
    CHECK(a.spheres[s].radius == b.spheres[s].radius);
    CHECK(a.spheres[s].radius > 0.0);
    CHECK(a.spheres[s].radius <= 1.0);
    CHECK(a.in_box(std::span<const double>(a.spheres[s].center.data(), 2)));
  }
  CHECK_THROWS_AS(random_scene(1, 5.0, 2, 0), Error);
}

TEST_CASE("imbalance counts") {
  ImbalanceSpec spec{100, 1.0 / 9.0, Flavor::EI};
  CHECK(spec.majority_count() == 90);
  CHECK(spec.minority_count() == 10);
  spec.ratio = 1.0;
  CHECK(spec.majority_count() == 50);
  spec.total = 10;
  spec.ratio = 1e-6;
  CHECK(spec.minority_count() == 1);
  spec.ratio = 0.0;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("uniform ball mean is near the center") {
  Vector c(3);
  c << 2.5, 2.0, 3.0;
  const auto scene = single_sphere(3, c, 1.0);
  auto rng = make_rng(3);
  const Matrix x = sample_inside(scene, 10000, rng);
  // per-coordinate variance of a uniform unit 3-ball is r^2 / (d + 2)
  const double se = std::sqrt(1.0 / 5.0 / 10000.0);
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(x.col(k).mean() - c(k)) < 3.0 * se);
}

TEST_CASE("protruding sphere stays in the box") {
  Vector c(2);
  c << 0.2, 4.9;
  const auto scene = single_sphere(2, c, 1.0);
  auto rng = make_rng(4);
  const Matrix x = sample_inside(scene, 2000, rng);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    CHECK(scene.in_box(row_span(x, r)));
    CHECK(scene.inside_any(row_span(x, r)));
  }
}

TEST_CASE("empty requests and outside sampling") {
  auto rng = make_rng(5);
  const auto scene = random_scene(2, 5.0, 2, 1);
  CHECK(sample_inside(scene, 0, rng).rows() == 0);
  CHECK(sample_outside(scene, 0, rng).rows() == 0);
  Vector c(2);
  c << 2.5, 2.5;
  const auto tiny = single_sphere(2, c, 1e-3, 100.0);
  const Matrix x = sample_outside(tiny, 1000, rng);
  for (Eigen::Index r = 0; r < x.rows(); ++r) CHECK_FALSE(tiny.inside_any(row_span(x, r)));
}

TEST_CASE("high dimension outside acceptance is near one") {
  HypersphereScene scene;
  scene.dim = 9;
  auto rng = make_rng(6);
  for (int s = 0; s < 3; ++s) {
    Vector c(9);
    for (int k = 0; k < 9; ++k) c(k) = 1.0 + 3.0 * uniform01(rng);
    scene.spheres.push_back({c, 1.0});
  }
  int inside = 0;
  const int trials = 20000;
  std::vector<double> p(9);
  for (int t = 0; t < trials; ++t) {
    for (auto& v : p) v = 5.0 * uniform01(rng);
    inside += scene.inside_any(p) ? 1 : 0;
  }
  CHECK(1.0 - static_cast<double>(inside) / trials > 0.99);
}

TEST_CASE("impossible region exhausts the rejection budget") {
  Vector c(2);
  c << 0.5, 0.5;
  const auto covering = single_sphere(2, c, 1.0, 1.0);
  auto rng = make_rng(7);
  try {
    sample_outside(covering, 1, rng);
    FAIL("expected RejectionBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RejectionBudgetExceeded);
  }
}

TEST_CASE("flavor labels and geometry") {
  const auto scene = random_scene(2, 5.0, 2, 8);
  for (auto flavor : {Flavor::EI, Flavor::DI}) {
    auto rng = make_rng(9);
    const auto ds = generate(scene, {100, 1.0 / 9.0, flavor}, rng);
    CHECK(ds.count(kNegative) == 90);
    CHECK(ds.count(kPositive) == 10);
    const int inside_label = flavor == Flavor::EI ? kNegative : kPositive;
    for (Eigen::Index r = 0; r < ds.features.rows(); ++r) {
      CHECK(scene.in_box(row_span(ds.features, r)));
      CHECK(scene.inside_any(row_span(ds.features, r)) == (ds.labels[static_cast<std::size_t>(r)] == inside_label));
    }
  }
}

TEST_CASE("balanced test sets") {
  const auto scene = random_scene(3, 5.0, 3, 10);
  auto rng = make_rng(11);
  CHECK(generate_balanced_test(scene, Flavor::EI, 50, rng).size() == 100);
  const auto one = generate_balanced_test(scene, Flavor::EI, 1, rng);
  CHECK(one.count(kPositive) == 1);
  CHECK(one.count(kNegative) == 1);

  auto train_rng = make_rng(12, {2});
  auto test_rng = make_rng(12, {3});
  const auto train = generate(scene, {300, 0.5, Flavor::DI}, train_rng);
  const auto test = generate_balanced_test(scene, Flavor::DI, 50, test_rng);
  std::set<std::vector<double>> seen;
  for (Eigen::Index r = 0; r < train.features.rows(); ++r) seen.insert(testing_util::to_grid(train.features.row(r))[0]);
  for (Eigen::Index r = 0; r < test.features.rows(); ++r)
    CHECK(seen.count(testing_util::to_grid(test.features.row(r))[0]) == 0);
}

TEST_CASE("generation is deterministic") {
  const auto scene = random_scene(3, 5.0, 3, 13);
  auto r1 = make_rng(14), r2 = make_rng(14);
  const auto a = generate(scene, {200, 0.3, Flavor::EI}, r1);
  const auto b = generate(scene, {200, 0.3, Flavor::EI}, r2);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);
}
