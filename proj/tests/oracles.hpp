#pragma once

// Reference computations used only by the tests. Nothing here calls an
// Eigen decomposition; matrices are just storage.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "schauder/types.hpp"

namespace oracle {

using schauder::CMatrix;
using schauder::Complex;
using schauder::CVector;

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column j belongs to values[j]
};

// Cyclic Jacobi for a complex Hermitian matrix. Each rotation first moves
// the phase of a_pq into column q, then applies the real 2x2 Jacobi rotation.
inline EigenSystem jacobi_eig(CMatrix a) {
  const Eigen::Index n = a.rows();
  CMatrix v = CMatrix::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, total = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        total += std::norm(a(i, j));
        if (i != j) off += std::norm(a(i, j));
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0) continue;
        const Complex e = a(p, q) / r;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        // G restricted to (p, q): [[c, s], [-s conj(e), c conj(e)]]
        const Complex g_pp = c, g_pq = s, g_qp = -s * std::conj(e), g_qq = c * std::conj(e);
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A G
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- G^* A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = a(q, p) = 0;
      }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem out{{}, CMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values.push_back(a(order[j], order[j]).real());
    out.vectors.col(j) = v.col(order[j]);
  }
  return out;
}

struct Svd {
  std::vector<double> sigma;  // descending
  CMatrix u;                  // left vectors (columns, for nonzero sigma)
  CMatrix v;                  // right vectors
};

// One-sided (Hestenes) Jacobi: rotate columns of A until pairwise orthogonal;
// the column norms are the singular values.
inline Svd jacobi_svd(CMatrix a) {
  const Eigen::Index cols = a.cols();
  CMatrix v = CMatrix::Identity(cols, cols);
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i < cols; ++i)
      for (Eigen::Index j = i + 1; j < cols; ++j) {
        double alpha = 0, beta = 0;
        Complex gamma = 0;
        for (Eigen::Index k = 0; k < a.rows(); ++k) {
          alpha += std::norm(a(k, i));
          beta += std::norm(a(k, j));
          gamma += std::conj(a(k, i)) * a(k, j);
        }
        const double g = std::abs(gamma);
        if (g <= 1e-16 * std::sqrt(alpha * beta) || g == 0) continue;
        rotated = true;
        const Complex e = gamma / g;
        const double zeta = (beta - alpha) / (2 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t), s = c * t;
        auto rotate = [&](CMatrix& m) {
          for (Eigen::Index k = 0; k < m.rows(); ++k) {
            const Complex mi = m(k, i), mj = m(k, j) * std::conj(e);
            m(k, i) = c * mi - s * mj;
            m(k, j) = s * mi + c * mj;
          }
        };
        rotate(a);
        rotate(v);
      }
    if (!rotated) break;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(cols));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> norms(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) {
    double s = 0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) s += std::norm(a(k, j));
    norms[static_cast<std::size_t>(j)] = std::sqrt(s);
  }
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return norms[i] > norms[j]; });
  Svd out{{}, CMatrix::Zero(a.rows(), cols), CMatrix(cols, cols)};
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double s = norms[static_cast<std::size_t>(order[j])];
    out.sigma.push_back(s);
    if (s > 0) out.u.col(j) = a.col(order[j]) / s;
    out.v.col(j) = v.col(order[j]);
  }
  return out;
}

inline double trace_norm(const CMatrix& a) {
  const auto s = jacobi_svd(a).sigma;
  return std::accumulate(s.begin(), s.end(), 0.0);
}

inline double op_norm(const CMatrix& a) {
  const auto s = jacobi_svd(a).sigma;
  return s.empty() ? 0.0 : s.front();
}

// sum_k eps_k x_k y_k^* assembled entry by entry.
inline CMatrix masked_sum(const CMatrix& xs, const CMatrix& ys, const CVector& eps) {
  const Eigen::Index d = xs.rows();
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < xs.cols(); ++k)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) += eps(k) * xs(i, k) * std::conj(ys(j, k));
  return m;
}

// E|sum a_k r_k| by looping over sign patterns, written without bit tricks.
inline double rademacher_l1(const std::vector<Complex>& a) {
  std::vector<int> signs(a.size(), 1);
  double total = 0;
  std::size_t count = 0;
  while (true) {
    Complex s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<double>(signs[k]) * a[k];
    total += std::abs(s);
    ++count;
    std::size_t k = 0;
    while (k < signs.size() && signs[k] == -1) signs[k++] = 1;
    if (k == signs.size()) break;
    signs[k] = -1;
  }
  return total / static_cast<double>(count);
}

// Brute-force max over a phase grid, eps_1 free as well, with the operator
// norm taken from the Jacobi SVD. Only for tiny n.
inline double grid_norm(const CMatrix& xs, const CMatrix& ys, int steps) {
  const Eigen::Index n = xs.cols();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  double best = 0;
  while (true) {
    CVector eps(n);
    for (Eigen::Index k = 0; k < n; ++k) eps(k) = std::polar(1.0, 2 * M_PI * idx[static_cast<std::size_t>(k)] / steps);
    best = std::max(best, op_norm(masked_sum(xs, ys, eps)));
    std::size_t k = 0;
    while (k < idx.size() && idx[k] == steps - 1) idx[k++] = 0;
    if (k == idx.size()) break;
    ++idx[k];
  }
  return best;
}

}  // namespace oracle
