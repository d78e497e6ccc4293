#pragma once

#include <span>
#include <vector>

#include "schauder/types.hpp"

namespace schauder {

inline constexpr double kFrameTol = 1e-10;
inline constexpr double kZeroVectorTol = 1e-14;

/// A finite pair of sequences {x_k}, {y_k} in C^d, stored as the columns of
/// two d x n matrices. Every vector is finite and nonzero.
class FramePair {
 public:
  FramePair(CMatrix xs, CMatrix ys);
  static FramePair from_vectors(std::span<const CVector> xs, std::span<const CVector> ys);

  Eigen::Index dim() const { return xs_.rows(); }
  Eigen::Index size() const { return xs_.cols(); }
  const CMatrix& xs() const { return xs_; }
  const CMatrix& ys() const { return ys_; }
  CVector x(Eigen::Index k) const { return xs_.col(k); }
  CVector y(Eigen::Index k) const { return ys_.col(k); }

  /// (alpha_k x_k, conj(alpha_k)^{-1} y_k). Leaves the pair operator and the
  /// multiplier map unchanged.
  FramePair reparameterized(const CVector& alpha) const;
  FramePair reparameterized(const RVector& alpha) const { return reparameterized(CVector(alpha.cast<Complex>())); }
  /// (U x_k, U y_k) for a common matrix U (unitary in all intended uses).
  FramePair rotated(const CMatrix& u) const;

  friend bool operator==(const FramePair&, const FramePair&) = default;

 private:
  CMatrix xs_;
  CMatrix ys_;
};

struct FrameBounds {
  double lower = 0;  // optimal lower frame bound, lambda_min(S)
  double upper = 0;  // optimal Bessel bound, lambda_max(S)
  bool is_frame = false;
};

/// S = sum_k v_k v_k^*, returned exactly Hermitian.
CMatrix frame_operator(const CMatrix& vectors);
CMatrix frame_operator(std::span<const CVector> vectors);

FrameBounds bessel_and_frame_bounds(const CMatrix& vectors, double frame_tol = kFrameTol);
FrameBounds bessel_and_frame_bounds(std::span<const CVector> vectors, double frame_tol = kFrameTol);

/// T = sum_k x_k y_k^*, so that T u = sum_k <u, y_k> x_k.
CMatrix pair_operator(const FramePair& pair);

/// Operator norm of T - I.
double schauder_deviation(const FramePair& pair);

bool is_schauder_identity(const FramePair& pair, double tol = kFrameTol);

}  // namespace schauder
