#pragma once

#include <vector>

#include "kotaro/dataset.hpp"
#include "kotaro/random.hpp"
#include "oracles.hpp"

namespace testing_util {

inline kotaro::Matrix to_matrix(const oracle::Grid& rows) {
  kotaro::Matrix m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

inline oracle::Grid to_grid(const kotaro::Matrix& m) {
  oracle::Grid g(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return g;
}

inline std::vector<double> to_std(const kotaro::Vector& v) { return {v.data(), v.data() + v.size()}; }

inline kotaro::Matrix uniform_points(std::size_t n, std::size_t m, double side, kotaro::Rng& rng) {
  kotaro::Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = side * kotaro::uniform01(rng);
  return x;
}

// Random labels with both classes present.
inline kotaro::Labels random_labels(std::size_t n, kotaro::Rng& rng) {
  kotaro::Labels y(n);
  for (auto& v : y) v = kotaro::uniform01(rng) < 0.5 ? kotaro::kPositive : kotaro::kNegative;
  y[0] = kotaro::kPositive;
  y[1] = kotaro::kNegative;
  return y;
}

inline kotaro::Dataset random_dataset(std::size_t n, std::size_t m, kotaro::Rng& rng, double side = 5.0) {
  return kotaro::make_dataset(uniform_points(n, m, side, rng), random_labels(n, rng));
}

}  // namespace testing_util
