#include "schauder/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "schauder/linalg.hpp"

namespace schauder {

LogWeights::LogWeights(RVector t) : t_(std::move(t)) {
  if (!t_.allFinite()) throw std::invalid_argument("LogWeights: non-finite entry");
}

LogWeights LogWeights::from_weights(const RVector& w) {
  if ((w.array() <= 0).any()) throw std::invalid_argument("LogWeights: weights must be positive");
  return LogWeights((2.0 * w.array().log()).matrix());
}

namespace {

struct TopPair {
  double value;
  CVector vector;
};

TopPair top_eigenpair(const CMatrix& family, const RVector& scale) {
  const CMatrix s = frame_operator(CMatrix(family * scale.cwiseSqrt().cast<Complex>().asDiagonal()));
  auto eig = linalg::hermitian_extreme_eig(s);
  return {eig.lambda_max, std::move(eig.v_max)};
}

void check_size(const FramePair& pair, const LogWeights& t) {
  if (t.size() != pair.size()) throw std::invalid_argument("log-weights length differs from pair size");
}

// Objective pieces shared by the subgradient, the descent and the refinement.
struct Evaluation {
  double f, g;
  RVector grad_f;  // d f / d t
  RVector grad_g;  // d g / d t (nonpositive)
};

Evaluation evaluate(const FramePair& pair, const RVector& t) {
  const RVector up = t.array().exp();
  const RVector down = (-t.array()).exp();
  const auto top_f = top_eigenpair(pair.xs(), up);
  const auto top_g = top_eigenpair(pair.ys(), down);
  const RVector proj_x = (pair.xs().adjoint() * top_f.vector).cwiseAbs2();
  const RVector proj_y = (pair.ys().adjoint() * top_g.vector).cwiseAbs2();
  return {top_f.value, top_g.value, up.cwiseProduct(proj_x), -down.cwiseProduct(proj_y)};
}

double balance_shift(double f, double g) {
  if (!(f > 0) || !(g > 0)) throw std::domain_error("balance: Bessel bounds must be positive");
  return 0.5 * std::log(g / f);
}

}  // namespace

BesselPair bessel_pair_objective(const FramePair& pair, const LogWeights& t) {
  check_size(pair, t);
  const RVector up = t.t().array().exp();
  const RVector down = (-t.t().array()).exp();
  return {top_eigenpair(pair.xs(), up).value, top_eigenpair(pair.ys(), down).value};
}

LogWeights balance(const FramePair& pair, const LogWeights& t) {
  const auto fg = bessel_pair_objective(pair, t);
  return t.shifted(balance_shift(fg.f, fg.g));
}

RVector subgradient(const FramePair& pair, const LogWeights& t) {
  check_size(pair, t);
  const auto ev = evaluate(pair, t.t());
  if (std::abs(ev.f - ev.g) <= kTieTol * std::max(ev.f, ev.g)) return 0.5 * (ev.grad_f + ev.grad_g);
  return ev.f > ev.g ? ev.grad_f : ev.grad_g;
}

double StepSchedule::operator()(int i) const { return initial / std::sqrt(static_cast<double>(i) + 1.0); }

LogWeights initial_weights(const FramePair& pair) {
  RVector t(pair.size());
  for (Eigen::Index k = 0; k < pair.size(); ++k) t(k) = std::log(pair.y(k).norm() / pair.x(k).norm());
  return LogWeights(std::move(t));
}

namespace {

// Balanced value sqrt(f g) and the gradient of log f + log g.
struct LogObjective {
  double balanced;
  double log_value;
  RVector grad;
};

LogObjective log_objective(const FramePair& pair, const RVector& t) {
  const auto ev = evaluate(pair, t);
  return {std::sqrt(ev.f * ev.g), std::log(ev.f) + std::log(ev.g), ev.grad_f / ev.f + ev.grad_g / ev.g};
}

// Orthonormal basis of the complement of the all-ones vector, as n x (n-1).
Eigen::MatrixXd mean_zero_basis(Eigen::Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(n, 1));
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  RVector t;
  void offer(double v, const RVector& cand) {
    if (v < value) {
      value = v;
      t = cand;
    }
  }
};

// Central-cut ellipsoid method on z -> log f + log g at t = center + Q z,
// over the ball |z| <= radius. Returns when the certified gap falls below tol.
void ellipsoid_refine(const FramePair& pair, const RVector& center, const OptimizeOptions& opts, Best& best,
                      std::vector<double>& history, bool& near_boundary) {
  const Eigen::Index n = pair.size();
  const Eigen::Index p = n - 1;
  const Eigen::MatrixXd basis = mean_zero_basis(n);
  const int cap = opts.refine_max_iters > 0 ? opts.refine_max_iters
                                            : static_cast<int>(std::max<Eigen::Index>(2000, 120 * p * (p + 1)));
  const double radius = opts.refine_radius;

  Eigen::VectorXd z = Eigen::VectorXd::Zero(p);
  Eigen::MatrixXd shape = radius * radius * Eigen::MatrixXd::Identity(p, p);
  double best_log = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_z = z;
  double lower = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < cap; ++it) {
    const RVector t = center + basis * z;
    const auto obj = log_objective(pair, t);
    if (obj.log_value < best_log) {
      best_log = obj.log_value;
      best_z = z;
    }
    best.offer(obj.balanced, t);
    history.push_back(best.value);

    const Eigen::VectorXd gz = basis.transpose() * obj.grad;
    const double gpg = gz.dot(shape * gz);
    if (!(gpg > 0) || !std::isfinite(gpg)) break;
    const double root = std::sqrt(gpg);
    lower = std::max(lower, obj.log_value - root);
    if (best_log - lower <= opts.refine_tol) break;

    const Eigen::VectorXd b = shape * gz / root;
    if (p == 1) {
      z -= b / 2.0;
      shape /= 4.0;
    } else {
      const double pd = static_cast<double>(p);
      z -= b / (pd + 1.0);
      shape = (pd * pd / (pd * pd - 1.0)) * (shape - (2.0 / (pd + 1.0)) * b * b.transpose());
      shape = 0.5 * (shape + shape.transpose());
    }
  }
  near_boundary = best_z.norm() > 0.7 * radius;
}

}  // namespace

CbBracket optimize(const FramePair& pair, const OptimizeOptions& opts) {
  const Eigen::Index n = pair.size();
  CbBracket out;
  Best best;

  // Projected subgradient descent with balancing after every step.
  LogWeights t = balance(pair, initial_weights(pair));
  {
    const auto fg = bessel_pair_objective(pair, t);
    best.offer(fg.max(), t.t());
    out.history.push_back(best.value);
  }
  int stall = 0;
  for (int i = 0; i < opts.max_iters; ++i) {
    const RVector g = subgradient(pair, t);
    const double gn = g.norm();
    if (!(gn > 0) || !std::isfinite(gn)) break;
    t = balance(pair, LogWeights(t.t() - opts.steps(i) * g / gn));
    const auto fg = bessel_pair_objective(pair, t);
    if (!std::isfinite(fg.f) || !std::isfinite(fg.g)) throw ConvergenceError("optimize: non-finite objective");
    const double before = best.value;
    best.offer(fg.max(), t.t());
    out.history.push_back(best.value);
    ++out.iterations;
    stall = (before - best.value > opts.tol * best.value) ? 0 : stall + 1;
    if (stall >= 50) break;
  }

  if (opts.refine && n >= 2) {
    for (int round = 0; round < 5; ++round) {
      bool near_boundary = false;
      const auto before = out.history.size();
      ellipsoid_refine(pair, best.t, opts, best, out.history, near_boundary);
      out.iterations += static_cast<int>(out.history.size() - before);
      if (!near_boundary) break;
    }
  }

  out.weights = balance(pair, LogWeights(best.t));
  const auto fg = bessel_pair_objective(pair, out.weights);
  out.f = fg.f;
  out.g = fg.g;
  out.m_upper = fg.max();

  if (opts.compute_lower) {
    const auto alt = norm_lower_alternating(pair, opts.alternating);
    const ScalarMask witness(alt.witness_mask);
    const double sampled = cb_lower_sampled(pair, opts.lower, std::span<const ScalarMask>(&witness, 1));
    out.m_lower = std::max(alt.value, sampled);
  }
  return out;
}

Scaling extract_scaling(const FramePair& pair, const LogWeights& weights) {
  check_size(pair, weights);
  Scaling out;
  out.alpha = weights.weights();
  const FramePair scaled = pair.reparameterized(out.alpha);
  out.bessel_x = bessel_and_frame_bounds(scaled.xs()).upper;
  out.bessel_y = bessel_and_frame_bounds(scaled.ys()).upper;
  return out;
}

}  // namespace schauder
