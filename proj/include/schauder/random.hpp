#pragma once

#include <cstdint>
#include <random>

#include "schauder/types.hpp"

namespace schauder {

using Rng = std::mt19937_64;

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline CMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng);
  return m;
}

inline CVector random_gaussian_vector(Eigen::Index n, Rng& rng) { return random_gaussian_matrix(n, 1, rng); }

inline CVector random_unit_vector(Eigen::Index n, Rng& rng) {
  CVector v = random_gaussian_vector(n, rng);
  return v / v.norm();
}

inline Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  return std::polar(1.0, angle(rng));
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
inline CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const CMatrix g = random_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// Log-uniform positive scalar in [lo, hi].
inline double log_uniform(double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace schauder
