#pragma once

// Rescaling weights for a pair {(x_k, y_k)}: the Bessel bounds of
// {w_k x_k} and {w_k^{-1} y_k} as a convex function of log-weights, its
// minimization, the cb-norm bracket the weights certify, and the explicit
// dilation Phi(a) = M V1^* pi(a) V2 built from them.

#include <cstdint>
#include <vector>

#include "schauder/frames.hpp"
#include "schauder/multiplier.hpp"

namespace schauder {

/// Log-weights t_k = log(w_k^2). Scaling x_k by w_k multiplies its
/// contribution to the frame operator by e^{t_k}.
class LogWeights {
 public:
  explicit LogWeights(RVector t);
  static LogWeights zeros(Eigen::Index n) { return LogWeights(RVector::Zero(n)); }
  static LogWeights from_weights(const RVector& w);

  Eigen::Index size() const { return t_.size(); }
  const RVector& t() const { return t_; }
  double operator()(Eigen::Index k) const { return t_(k); }
  /// w_k = e^{t_k / 2}
  RVector weights() const { return (t_ / 2.0).array().exp().matrix(); }
  LogWeights shifted(double c) const { return LogWeights((t_.array() + c).matrix()); }

 private:
  RVector t_;
};

struct BesselPair {
  double f = 0;  // lambda_max(sum_k e^{t_k} x_k x_k^*)
  double g = 0;  // lambda_max(sum_k e^{-t_k} y_k y_k^*)
  double max() const { return f > g ? f : g; }
};

BesselPair bessel_pair_objective(const FramePair& pair, const LogWeights& t);

/// t + c 1 with c = ln(g / f) / 2, after which f = g = sqrt(f g).
LogWeights balance(const FramePair& pair, const LogWeights& t);

inline constexpr double kTieTol = 1e-9;

/// Subgradient of max(f, g) in t from the top unit eigenvectors. Within
/// kTieTol (relative) of f == g the two one-sided gradients are averaged.
RVector subgradient(const FramePair& pair, const LogWeights& t);

/// Diminishing steps s_i = initial / sqrt(i + 1).
struct StepSchedule {
  double initial = 1.0;
  double operator()(int i) const;
};

struct OptimizeOptions {
  int max_iters = 2000;
  StepSchedule steps{};
  double tol = 1e-7;
  /// Ellipsoid refinement of the subgradient result on log f + log g.
  bool refine = true;
  double refine_tol = 1e-11;
  int refine_max_iters = 0;  // 0 = sized from n
  double refine_radius = 16.0;
  bool compute_lower = true;
  CbSampleOptions lower{};
  AlternatingOptions alternating{};
};

/// Certified interval around ||Phi||_cb.
struct CbBracket {
  double m_upper = 0;
  double m_lower = 0;
  LogWeights weights = LogWeights::zeros(0);
  double f = 0;
  double g = 0;
  int iterations = 0;
  /// Best-so-far m_upper after every iteration (nonincreasing).
  std::vector<double> history;
};

/// Start point t_k = log(|y_k| / |x_k|), equivariant under reparameterization.
LogWeights initial_weights(const FramePair& pair);

CbBracket optimize(const FramePair& pair, const OptimizeOptions& opts = {});

struct Scaling {
  RVector alpha;  // positive reals
  double bessel_x = 0;
  double bessel_y = 0;
};

Scaling extract_scaling(const FramePair& pair, const LogWeights& weights);

/// Phi(a) = scale * V1^* pi(a) V2 on K = C^n + C^d + C^d. pi(a) multiplies
/// coordinate k of C^n by a(k) and both padding blocks by a(1).
struct Dilation {
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  CMatrix v1;  // (n + 2d) x d isometry
  CMatrix v2;  // (n + 2d) x d isometry
  double scale = 0;

  Eigen::Index big_dim() const { return n + 2 * d; }
  /// Diagonal of pi(a).
  CVector representation(const ScalarMask& a) const;
};

/// Requires both Bessel bounds of the weighted families to be at most
/// M + 1e-10 * max(1, M); throws NotPsdError otherwise.
Dilation build_dilation(const FramePair& pair, const LogWeights& weights, double m);

CMatrix dilation_reconstruct(const Dilation& dil, const ScalarMask& a);

}  // namespace schauder
