#pragma once

// Brute-force reference computations for tests. Nothing here calls into
// the library's numeric code paths; only plain data types are shared.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mrfsom/kinematics.hpp"
#include "mrfsom/matrix.hpp"

namespace oracle {

using mrfsom::Matrix;

// ---------------------------------------------------------------------------
// Lattice

/// Geometric center of cell (r, c) when odd rows sit half a cell left.
inline std::array<double, 2> hex_center(std::size_t r, std::size_t c) {
  const double x = static_cast<double>(c) - (r % 2 == 1 ? 0.5 : 0.0);
  const double y = static_cast<double>(r) * std::sqrt(3.0) / 2.0;
  return {x, y};
}

/// All-pairs hop distance on the hex grid: cells are adjacent when their
/// centers are one unit apart; distances by BFS.
inline std::vector<std::vector<std::size_t>> hex_hops(std::size_t rows, std::size_t cols) {
  const std::size_t n = rows * cols;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto pa = hex_center(a / cols, a % cols);
      const auto pb = hex_center(b / cols, b % cols);
      const double d = std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
      if (std::abs(d - 1.0) < 1e-9) adj[a].push_back(b);
    }
  }
  std::vector<std::vector<std::size_t>> hops(n, std::vector<std::size_t>(n, SIZE_MAX));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> queue{s};
    hops[s][s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const std::size_t v : adj[u]) {
        if (hops[s][v] != SIZE_MAX) continue;
        hops[s][v] = hops[s][u] + 1;
        queue.push_back(v);
      }
    }
  }
  return hops;
}

inline std::size_t manhattan(std::size_t a, std::size_t b, std::size_t cols) {
  const long ar = static_cast<long>(a / cols), ac = static_cast<long>(a % cols);
  const long br = static_cast<long>(b / cols), bc = static_cast<long>(b % cols);
  return static_cast<std::size_t>(std::labs(ar - br) + std::labs(ac - bc));
}

// ---------------------------------------------------------------------------
// Winner search

/// Distance of sample to a weight row over the dims where active[i] (all
/// when active is empty); divided by sqrt(count) when rms.
inline double distance(const std::vector<double>& x, const std::vector<double>& w,
                       const std::vector<bool>& active = {}, bool rms = false) {
  double acc = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!active.empty() && !active[i]) continue;
    acc += std::pow(x[i] - w[i], 2);
    ++count;
  }
  return rms ? std::sqrt(acc / count) : std::sqrt(acc);
}

/// Neuron indices sorted by (distance, index).
inline std::vector<std::size_t> ranking(const std::vector<double>& dists) {
  std::vector<std::size_t> order(dists.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dists[a] < dists[b]; });
  return order;
}

inline std::vector<double> row(const Matrix& m, std::size_t r) {
  return {m.row(r).begin(), m.row(r).end()};
}

inline std::vector<bool> mask_row(const std::vector<std::vector<bool>>& mask, std::size_t n) {
  return mask.empty() ? std::vector<bool>{} : mask[n];
}

inline std::size_t bmu(const Matrix& codebook, const std::vector<double>& x,
                       const std::vector<std::vector<bool>>& mask = {}, bool rms = false) {
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t n = 0; n < codebook.rows(); ++n) {
    const double d = distance(x, row(codebook, n), mask_row(mask, n), rms);
    if (d < best_d) {  // strict: earlier index wins ties
      best_d = d;
      best = n;
    }
  }
  return best;
}

inline double quantization_error(const Matrix& codebook, const Matrix& data,
                                  const std::vector<std::vector<bool>>& mask = {}, bool rms = false) {
  double total = 0.0;
  for (std::size_t s = 0; s < data.rows(); ++s) {
    double best = INFINITY;
    for (std::size_t n = 0; n < codebook.rows(); ++n) {
      best = std::min(best, distance(row(data, s), row(codebook, n), mask_row(mask, n), rms));
    }
    total += best;
  }
  return total / static_cast<double>(data.rows());
}

/// `adjacent(a, b)` decides lattice adjacency.
template <class Adjacent>
double topographic_error(const Matrix& codebook, const Matrix& data, Adjacent adjacent,
                         const std::vector<std::vector<bool>>& mask = {}, bool rms = false) {
  std::size_t errors = 0;
  for (std::size_t s = 0; s < data.rows(); ++s) {
    std::vector<double> d;
    for (std::size_t n = 0; n < codebook.rows(); ++n) d.push_back(distance(row(data, s), row(codebook, n), mask_row(mask, n), rms));
    const auto order = ranking(d);
    if (!adjacent(order[0], order[1])) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(data.rows());
}

/// Kohonen step written out element by element: w += a * h * (x - w).
template <class LatticeDistance>
Matrix update(Matrix codebook, const std::vector<double>& x, std::size_t bmu, double alpha, double sigma,
              LatticeDistance lattice_distance, const std::vector<std::vector<bool>>& mask = {}) {
  for (std::size_t n = 0; n < codebook.rows(); ++n) {
    const double d = static_cast<double>(lattice_distance(n, bmu));
    const double h = std::exp(-d * d / (2.0 * sigma * sigma));
    for (std::size_t i = 0; i < codebook.cols(); ++i) {
      if (!mask.empty() && !mask[n][i]) continue;
      codebook(n, i) = codebook(n, i) + alpha * h * (x[i] - codebook(n, i));
    }
  }
  return codebook;
}

/// RMS distance over the union of the two neurons' active dims.
inline double pair_distance(const Matrix& codebook, const std::vector<std::vector<bool>>& mask, std::size_t a,
                            std::size_t b) {
  double acc = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < codebook.cols(); ++i) {
    if (!(mask[a][i] || mask[b][i])) continue;
    acc += std::pow(codebook(a, i) - codebook(b, i), 2);
    ++count;
  }
  return count ? std::sqrt(acc / count) : 0.0;
}

// ---------------------------------------------------------------------------
// Kinematics: rotate the point from the end of the chain back to the torso.

inline std::array<double, 3> rotate(mrfsom::Axis axis, double angle, std::array<double, 3> p) {
  const double c = std::cos(angle), s = std::sin(angle);
  switch (axis) {
    case mrfsom::Axis::x: return {p[0], c * p[1] - s * p[2], s * p[1] + c * p[2]};
    case mrfsom::Axis::y: return {c * p[0] + s * p[2], p[1], -s * p[0] + c * p[2]};
    case mrfsom::Axis::z: return {c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]};
  }
  return p;
}

inline std::array<double, 3> add(std::array<double, 3> a, std::array<double, 3> b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline std::array<double, 3> vec(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

inline std::array<double, 3> hand(const mrfsom::JointSample& q, const mrfsom::ChainSpec& c) {
  using namespace mrfsom;
  std::array<double, 3> p = {c.forearm_hand, 0.0, 0.0};
  p = rotate(c.axes[wrist], q[wrist], p);
  p = rotate(c.axes[elbow_roll], q[elbow_roll], p);
  p = rotate(c.axes[elbow_yaw], q[elbow_yaw], p);
  p = add(p, {c.upper_arm, 0.0, 0.0});
  p = rotate(c.axes[shoulder_roll], q[shoulder_roll], p);
  p = rotate(c.axes[shoulder_pitch], q[shoulder_pitch], p);
  return add(p, vec(c.shoulder_offset));
}

inline std::array<double, 3> face(const mrfsom::JointSample& q, const mrfsom::ChainSpec& c) {
  using namespace mrfsom;
  std::array<double, 3> p = vec(c.face_target);
  p = rotate(c.axes[head_pitch], q[head_pitch], p);
  p = rotate(c.axes[head_yaw], q[head_yaw], p);
  return add(p, vec(c.neck_offset));
}

inline bool touching(const mrfsom::JointSample& q, const mrfsom::ChainSpec& c) {
  const auto h = hand(q, c);
  const auto f = face(q, c);
  return std::sqrt(std::pow(h[0] - f[0], 2) + std::pow(h[1] - f[1], 2) + std::pow(h[2] - f[2], 2)) < c.touch_radius;
}

// ---------------------------------------------------------------------------
// Random instances

inline Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(gen);
  }
  return m;
}

/// Values on a 0.25 grid in [-1, 1]: squared differences and their sums
/// are exact, so ties are common and exact.
inline Matrix grid_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> u(-4, 4);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = 0.25 * u(gen);
  }
  return m;
}

/// Random mask where every neuron has an active dim and every dim a neuron.
inline std::vector<std::vector<bool>> random_mask(std::mt19937_64& gen, std::size_t neurons, std::size_t dims) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<bool>> mask(neurons, std::vector<bool>(dims));
  for (auto& r : mask) {
    for (std::size_t i = 0; i < dims; ++i) r[i] = coin(gen);
  }
  for (std::size_t n = 0; n < neurons; ++n) mask[n][n % dims] = true;
  for (std::size_t i = 0; i < dims; ++i) mask[i % neurons][i] = true;
  return mask;
}

}  // namespace oracle
