#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kotaro/random.hpp"

// Reference implementations that share no code with the library.
namespace oracle {

using Grid = std::vector<std::vector<double>>;

inline double sqdist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

// Partial-pivot elimination in long double. Empty result for a singular pivot.
inline std::optional<std::vector<double>> gauss_solve(Grid a, std::vector<double> y) {
  const std::size_t n = y.size();
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = a[r][c];
    m[r][n] = y[r];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0L) return std::nullopt;
    std::swap(m[piv], m[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<double> w(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = m[i][n];
    for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * static_cast<long double>(w[c]);
    w[i] = static_cast<double>(s / m[i][i]);
  }
  return w;
}

// Max distance to the n nearest other points by full sort of every pair.
inline std::vector<double> neighbor_scales(const Grid& pts, int n) {
  std::vector<double> d(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(std::sqrt(sqdist(pts[i], pts[j])));
    std::sort(others.begin(), others.end());
    d[i] = others[static_cast<std::size_t>(n) - 1];
  }
  return d;
}

inline double kernel_sum(const Grid& centers, const std::vector<double>& gamma, const std::vector<double>& w,
                         const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < centers.size(); ++i)
    s += static_cast<long double>(w[i]) * std::exp(-static_cast<long double>(gamma[i]) * sqdist(centers[i], q));
  return static_cast<double>(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Gram-Schmidt on random vectors: `count` orthonormal vectors of length n.
inline Grid orthonormal(std::size_t n, std::size_t count, kotaro::Rng& rng) {
  Grid q;
  while (q.size() < count) {
    std::vector<double> v(n);
    for (auto& x : v) x = kotaro::uniform01(rng) * 2.0 - 1.0;
    for (const auto& u : q) {
      const double p = dot(u, v);
      for (std::size_t k = 0; k < n; ++k) v[k] -= p * u[k];
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-3) continue;
    for (auto& x : v) x /= norm;
    q.push_back(v);
  }
  return q;
}

// A = sum_k s_k u_k v_k^T with orthonormal u, v. Its minimum-norm least-squares
// solution is w = sum_k v_k (u_k . y) / s_k.
struct LowRankSystem {
  Grid a;
  std::vector<double> y;
  std::vector<double> w_min_norm;
  int rank = 0;
};

inline LowRankSystem low_rank_system(std::size_t n, int rank, kotaro::Rng& rng) {
  const Grid u = orthonormal(n, static_cast<std::size_t>(rank), rng);
  const Grid v = orthonormal(n, static_cast<std::size_t>(rank), rng);
  LowRankSystem sys;
  sys.rank = rank;
  sys.a.assign(n, std::vector<double>(n, 0.0));
  sys.y.resize(n);
  for (auto& x : sys.y) x = kotaro::uniform01(rng) * 2.0 - 1.0;
  sys.w_min_norm.assign(n, 0.0);
  for (int k = 0; k < rank; ++k) {
    const double s = 0.5 + 2.0 * kotaro::uniform01(rng);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) sys.a[r][c] += s * u[k][r] * v[k][c];
    const double coef = dot(u[k], sys.y) / s;
    for (std::size_t c = 0; c < n; ++c) sys.w_min_norm[c] += coef * v[k][c];
  }
  return sys;
}

}  // namespace oracle
