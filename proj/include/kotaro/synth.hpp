#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kotaro/dataset.hpp"
#include "kotaro/random.hpp"

namespace kotaro {

/// EI: majority class packed inside the spheres, minority in the complement.
/// DI: minority inside the spheres, majority in the complement.
enum class Flavor { EI, DI };

std::string to_string(Flavor flavor);
Flavor parse_flavor(const std::string& text);

struct Sphere {
  Vector center;
  double radius = 1.0;
};

/// Spheres inside the box [0, box_side]^dim. Spheres may overlap each other
/// and stick out of the box; samples never leave the box.
struct HypersphereScene {
  int dim = 2;
  double box_side = 5.0;
  std::vector<Sphere> spheres;
  std::uint64_t seed = 0;

  void validate() const;
  bool in_box(std::span<const double> p) const;
  /// min over spheres of |p - c| - r; <= 0 means inside some sphere.
  double sphere_margin(std::span<const double> p) const;
  bool inside_any(std::span<const double> p) const { return sphere_margin(p) <= 0.0; }
  int containing_count(std::span<const double> p) const;
};

/// Two spheres in 2-D, three otherwise.
constexpr int default_sphere_count(int dim) { return dim == 2 ? 2 : 3; }

struct ImbalanceSpec {
  std::size_t total = 300;
  double ratio = 1.0;  // minority / majority, in (0, 1]
  Flavor flavor = Flavor::EI;

  void validate() const;
  /// round(total / (1 + ratio)), clamped so both classes keep a sample.
  std::size_t majority_count() const;
  std::size_t minority_count() const { return total - majority_count(); }
};

/// Attempts allowed per requested sample before RejectionBudgetExceeded.
inline constexpr std::size_t kRejectionAttemptsPerSample = 10'000;

HypersphereScene random_scene(int dim, double box_side, int sphere_count, std::uint64_t seed);

/// Uniform over (union of spheres) ∩ box.
Matrix sample_inside(const HypersphereScene& scene, std::size_t count, Rng& rng);

/// Uniform over box \ (union of spheres).
Matrix sample_outside(const HypersphereScene& scene, std::size_t count, Rng& rng);

Dataset generate(const HypersphereScene& scene, const ImbalanceSpec& spec, Rng& rng);

/// per_class samples from each region, labeled according to flavor.
Dataset generate_balanced_test(const HypersphereScene& scene, Flavor flavor, std::size_t per_class, Rng& rng);

}  // namespace kotaro
