#include "schauder/generators.hpp"

#include <stdexcept>

#include "schauder/errors.hpp"
#include "schauder/linalg.hpp"

namespace schauder::gen {

FramePair orthonormal(Eigen::Index d) {
  const CMatrix id = CMatrix::Identity(d, d);
  return FramePair(id, id);
}

FramePair gaussian(Eigen::Index n, Eigen::Index d, Rng& rng) {
  CMatrix xs = random_gaussian_matrix(d, n, rng);
  CMatrix ys = random_gaussian_matrix(d, n, rng);
  return FramePair(std::move(xs), std::move(ys));
}

FramePair canonical_dual(Eigen::Index n, Eigen::Index d, Rng& rng) {
  if (n < d) throw std::invalid_argument("canonical_dual: need n >= d for a frame");
  for (int attempt = 0; attempt < 100; ++attempt) {
    const CMatrix xs = random_gaussian_matrix(d, n, rng);
    const CMatrix s = frame_operator(xs);
    const auto eig = linalg::hermitian_extreme_eig(s);
    if (eig.lambda_min < 1e-3 * eig.lambda_max) continue;
    const CMatrix ys = s.llt().solve(xs);
    FramePair pair(xs, ys);
    if (is_schauder_identity(pair, 1e-10)) return pair;
  }
  throw ConvergenceError("canonical_dual: could not draw a well-conditioned frame");
}

FramePair tight_canonical_dual(Eigen::Index n, Eigen::Index d, Rng& rng) {
  if (n < d) throw std::invalid_argument("tight_canonical_dual: need n >= d");
  // Rows of an n x n unitary restricted to d coordinates form a Parseval frame.
  const CMatrix u = random_unitary(n, rng);
  const CMatrix xs = u.topRows(d);
  const double c = static_cast<double>(n) / static_cast<double>(d);
  const CMatrix scaled = xs * std::sqrt(c);
  return FramePair(scaled, scaled / c);
}

FramePair onb_union(Eigen::Index d, Rng& rng) {
  CMatrix xs(d, 2 * d);
  xs.leftCols(d) = CMatrix::Identity(d, d);
  xs.rightCols(d) = random_unitary(d, rng);
  return FramePair(xs, xs);
}

FramePair d1_scalars(Eigen::Index n, Rng& rng) {
  CMatrix xs(1, n), ys(1, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    xs(0, k) = log_uniform(1e-2, 1e2, rng) * random_phase(rng);
    ys(0, k) = log_uniform(1e-2, 1e2, rng) * random_phase(rng);
  }
  return FramePair(std::move(xs), std::move(ys));
}

FramePair mangle(const FramePair& pair, double lo, double hi, Rng& rng) {
  if (!(lo > 0) || !(hi >= lo)) throw std::invalid_argument("mangle: need 0 < lo <= hi");
  CVector beta(pair.size());
  for (Eigen::Index k = 0; k < pair.size(); ++k) beta(k) = log_uniform(lo, hi, rng) * random_phase(rng);
  return pair.reparameterized(beta);
}

}  // namespace schauder::gen
