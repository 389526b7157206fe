#include "kotaro/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kotaro/error.hpp"

namespace kotaro {

namespace {

void check_budget(std::size_t attempts, std::size_t count, const char* region) {
  if (attempts >= kRejectionAttemptsPerSample * count) {
    throw Error(ErrorCode::RejectionBudgetExceeded,
                std::string("could not draw ") + std::to_string(count) + " samples " + region + " within " +
                    std::to_string(attempts) + " attempts");
  }
}

// Uniform point in the ball of `sphere`, written into `out`.
void draw_in_ball(const Sphere& sphere, Rng& rng, std::normal_distribution<double>& normal,
                  std::span<double> out) {
  const auto dim = out.size();
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      out[k] = normal(rng);
      norm2 += out[k] * out[k];
    }
  } while (norm2 == 0.0);
  const double radius = sphere.radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(dim));
  const double scale = radius / std::sqrt(norm2);
  for (std::size_t k = 0; k < dim; ++k) {
    out[k] = sphere.center(static_cast<Eigen::Index>(k)) + out[k] * scale;
  }
}

}  // namespace

std::string to_string(Flavor flavor) { return flavor == Flavor::EI ? "ei" : "di"; }

Flavor parse_flavor(const std::string& text) {
  if (text == "ei" || text == "EI") return Flavor::EI;
  if (text == "di" || text == "DI") return Flavor::DI;
  throw Error(ErrorCode::InvalidArgument, "flavor must be 'ei' or 'di', got '" + text + "'");
}

void HypersphereScene::validate() const {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "scene dimension must be positive");
  if (!(box_side > 0.0) || !std::isfinite(box_side)) {
    throw Error(ErrorCode::InvalidArgument, "box_side must be positive");
  }
  if (spheres.empty()) throw Error(ErrorCode::InvalidArgument, "scene needs at least one sphere");
  for (const auto& s : spheres) {
    if (s.center.size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "sphere center dimension differs from scene dimension");
    }
    if (!(s.radius > 0.0 && s.radius <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "sphere radius must lie in (0, 1]");
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (!(s.center(k) >= 0.0 && s.center(k) <= box_side)) {
        throw Error(ErrorCode::InvalidArgument, "sphere center lies outside the box");
      }
    }
  }
}

bool HypersphereScene::in_box(std::span<const double> p) const {
  for (double v : p) {
    if (!(v >= 0.0 && v <= box_side)) return false;
  }
  return true;
}

double HypersphereScene::sphere_margin(std::span<const double> p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : spheres) {
    double sq = 0.0;
    for (Eigen::Index k = 0; k < s.center.size(); ++k) {
      const double diff = p[static_cast<std::size_t>(k)] - s.center(k);
      sq += diff * diff;
    }
    best = std::min(best, std::sqrt(sq) - s.radius);
  }
  return best;
}

int HypersphereScene::containing_count(std::span<const double> p) const {
  int hits = 0;
  for (const auto& s : spheres) {
    double sq = 0.0;
    for (Eigen::Index k = 0; k < s.center.size(); ++k) {
      const double diff = p[static_cast<std::size_t>(k)] - s.center(k);
      sq += diff * diff;
    }
    if (std::sqrt(sq) - s.radius <= 0.0) ++hits;
  }
  return hits;
}

void ImbalanceSpec::validate() const {
  if (total < 2) throw Error(ErrorCode::InvalidArgument, "total must be at least 2");
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "imbalance ratio must lie in (0, 1]");
  }
}

std::size_t ImbalanceSpec::majority_count() const {
  const auto raw = static_cast<std::size_t>(std::llround(static_cast<double>(total) / (1.0 + ratio)));
  return std::clamp<std::size_t>(raw, 1, total - 1);
}

HypersphereScene random_scene(int dim, double box_side, int sphere_count, std::uint64_t seed) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "scene dimension must be at least 2");
  if (sphere_count < 1) throw Error(ErrorCode::InvalidArgument, "sphere_count must be at least 1");
  if (!(box_side > 0.0)) throw Error(ErrorCode::InvalidArgument, "box_side must be positive");

  Rng rng = make_rng(seed, {0x5CE7E});
  HypersphereScene scene;
  scene.dim = dim;
  scene.box_side = box_side;
  scene.seed = seed;
  for (int s = 0; s < sphere_count; ++s) {
    Sphere sphere;
    sphere.center.resize(dim);
    for (int k = 0; k < dim; ++k) sphere.center(k) = box_side * uniform01(rng);
    sphere.radius = 1.0 - uniform01(rng);  // (0, 1]
    scene.spheres.push_back(std::move(sphere));
  }
  return scene;
}

Matrix sample_inside(const HypersphereScene& scene, std::size_t count, Rng& rng) {
  scene.validate();
  Matrix out(static_cast<Eigen::Index>(count), scene.dim);
  if (count == 0) return out;

  // Volume-weighted sphere choice. A point covered by c spheres is proposed
  // c times as often, so it is kept with probability 1/c.
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& s : scene.spheres) {
    acc += std::pow(s.radius, scene.dim);
    cumulative.push_back(acc);
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> point(static_cast<std::size_t>(scene.dim));
  std::size_t attempts = 0;
  for (std::size_t filled = 0; filled < count;) {
    check_budget(attempts, count, "inside the spheres");
    ++attempts;
    const double pick = uniform01(rng) * acc;
    std::size_t s = 0;
    while (s + 1 < cumulative.size() && pick >= cumulative[s]) ++s;
    draw_in_ball(scene.spheres[s], rng, normal, point);
    if (!scene.in_box(point)) continue;
    const int covering = scene.containing_count(point);
    if (covering < 1) continue;  // rounding at the rim
    if (covering > 1 && uniform01(rng) * covering >= 1.0) continue;
    for (int k = 0; k < scene.dim; ++k) out(static_cast<Eigen::Index>(filled), k) = point[static_cast<std::size_t>(k)];
    ++filled;
  }
  return out;
}

Matrix sample_outside(const HypersphereScene& scene, std::size_t count, Rng& rng) {
  scene.validate();
  Matrix out(static_cast<Eigen::Index>(count), scene.dim);
  std::vector<double> point(static_cast<std::size_t>(scene.dim));
  std::size_t attempts = 0;
  for (std::size_t filled = 0; filled < count;) {
    check_budget(attempts, count, "outside the spheres");
    ++attempts;
    for (auto& v : point) v = scene.box_side * uniform01(rng);
    if (scene.inside_any(point)) continue;
    for (int k = 0; k < scene.dim; ++k) out(static_cast<Eigen::Index>(filled), k) = point[static_cast<std::size_t>(k)];
    ++filled;
  }
  return out;
}

namespace {

Dataset assemble(const HypersphereScene& scene, Matrix inside, int inside_label, Matrix outside) {
  Dataset ds;
  ds.features.resize(inside.rows() + outside.rows(), scene.dim);
  ds.features.topRows(inside.rows()) = inside;
  ds.features.bottomRows(outside.rows()) = outside;
  ds.labels.assign(static_cast<std::size_t>(inside.rows()), inside_label);
  ds.labels.insert(ds.labels.end(), static_cast<std::size_t>(outside.rows()), -inside_label);
  return ds;
}

}  // namespace

Dataset generate(const HypersphereScene& scene, const ImbalanceSpec& spec, Rng& rng) {
  spec.validate();
  const std::size_t majority = spec.majority_count();
  const std::size_t minority = spec.minority_count();
  if (spec.flavor == Flavor::EI) {
    Matrix inside = sample_inside(scene, majority, rng);
    Matrix outside = sample_outside(scene, minority, rng);
    return assemble(scene, std::move(inside), kNegative, std::move(outside));
  }
  Matrix inside = sample_inside(scene, minority, rng);
  Matrix outside = sample_outside(scene, majority, rng);
  return assemble(scene, std::move(inside), kPositive, std::move(outside));
}

Dataset generate_balanced_test(const HypersphereScene& scene, Flavor flavor, std::size_t per_class, Rng& rng) {
  if (per_class < 1) throw Error(ErrorCode::InvalidArgument, "per_class must be at least 1");
  Matrix inside = sample_inside(scene, per_class, rng);
  Matrix outside = sample_outside(scene, per_class, rng);
  return assemble(scene, std::move(inside), flavor == Flavor::EI ? kNegative : kPositive, std::move(outside));
}

}  // namespace kotaro
