#include "schauder/multiplier.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "schauder/errors.hpp"
#include "schauder/linalg.hpp"
#include "schauder/random.hpp"

namespace schauder {

ScalarMask::ScalarMask(CVector values) : values_(std::move(values)) {
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    const double mag = std::abs(values_(k));
    if (!std::isfinite(mag) || mag > 1.0 + kMaskTol)
      throw std::invalid_argument("ScalarMask: |eps_" + std::to_string(k) + "| exceeds 1");
  }
}

ScalarMask ScalarMask::unit(Eigen::Index n, Eigen::Index k) {
  if (k < 0 || k >= n) throw std::out_of_range("ScalarMask::unit: index out of range");
  CVector v = CVector::Zero(n);
  v(k) = 1.0;
  return ScalarMask(std::move(v));
}

std::string_view to_string(NormMethod m) {
  switch (m) {
    case NormMethod::alternating: return "alternating";
    case NormMethod::grid: return "grid";
    case NormMethod::sampled: return "sampled";
  }
  return "unknown";
}

double bilinear_value(const FramePair& pair, const CVector& mask, const CVector& u, const CVector& v) {
  // <u, y_k> = y_k^* u, <x_k, v> = v^* x_k
  const CVector uy = pair.ys().adjoint() * u;
  const CVector xv = pair.xs().adjoint() * v;
  Complex sum = 0;
  for (Eigen::Index k = 0; k < pair.size(); ++k) sum += mask(k) * uy(k) * std::conj(xv(k));
  return sum.real();
}

AmplifiedInput::AmplifiedInput(Eigen::Index m, std::vector<CMatrix> blocks) : m_(m), blocks_(std::move(blocks)) {
  if (m_ < 1) throw std::invalid_argument("AmplifiedInput: m must be at least 1");
  for (const auto& b : blocks_)
    if (b.rows() != m_ || b.cols() != m_) throw std::invalid_argument("AmplifiedInput: block is not m x m");
}

AmplifiedInput AmplifiedInput::identity(Eigen::Index m, Eigen::Index n) {
  return AmplifiedInput(m, std::vector<CMatrix>(static_cast<std::size_t>(n), CMatrix::Identity(m, m)));
}

AmplifiedInput AmplifiedInput::diagonal(Eigen::Index m, const ScalarMask& mask) {
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(mask.size()));
  for (Eigen::Index k = 0; k < mask.size(); ++k) blocks.push_back(mask(k) * CMatrix::Identity(m, m));
  return AmplifiedInput(m, std::move(blocks));
}

double AmplifiedInput::norm() const {
  double out = 0;
  for (const auto& b : blocks_) out = std::max(out, linalg::operator_norm(b));
  return out;
}

CVector apply(const FramePair& pair, const ScalarMask& a, const CVector& u) {
  if (a.size() != pair.size()) throw std::invalid_argument("apply: mask length differs from pair size");
  if (u.size() != pair.dim()) throw std::invalid_argument("apply: vector dimension mismatch");
  CVector out = CVector::Zero(pair.dim());
  for (Eigen::Index k = 0; k < pair.size(); ++k) out += a(k) * inner(u, pair.y(k)) * pair.x(k);
  return out;
}

CMatrix mask_matrix(const FramePair& pair, const ScalarMask& eps) {
  if (eps.size() != pair.size()) throw std::invalid_argument("mask_matrix: mask length differs from pair size");
  return pair.xs() * eps.values().asDiagonal() * pair.ys().adjoint();
}

MultiplierNormEstimate alternating_from(const FramePair& pair, const CVector& start_mask, int max_iters, double tol,
                                        std::vector<double>* trace) {
  if (start_mask.size() != pair.size()) throw std::invalid_argument("alternating_from: mask length mismatch");
  CVector eps = start_mask;
  MultiplierNormEstimate est;
  est.method = NormMethod::alternating;
  double prev = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < std::max(1, max_iters); ++it) {
    const CMatrix m = pair.xs() * eps.asDiagonal() * pair.ys().adjoint();
    const auto trip = linalg::top_singular_triplet(m);
    // <Phi(eps) u, v> = v^* M u is maximized by u = right, v = left singular vector.
    const CVector& u = trip.v;
    const CVector& v = trip.u;
    const CVector uy = pair.ys().adjoint() * u;
    const CVector xv = pair.xs().adjoint() * v;
    for (Eigen::Index k = 0; k < pair.size(); ++k) {
      const Complex c = uy(k) * std::conj(xv(k));
      const double mag = std::abs(c);
      if (mag > 0) eps(k) = std::conj(c) / mag;
    }
    const double value = bilinear_value(pair, eps, u, v);
    if (trace) trace->push_back(value);
    est.iterations = it + 1;
    if (value > est.value || it == 0) {
      est.value = value;
      est.witness_u = u;
      est.witness_v = v;
      est.witness_mask = eps;
    }
    if (value - prev <= tol * (1.0 + std::abs(value))) break;
    prev = value;
  }
  return est;
}

MultiplierNormEstimate norm_lower_alternating(const FramePair& pair, const AlternatingOptions& opts,
                                              std::vector<double>* trace) {
  MultiplierNormEstimate best;
  bool have = false;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    CVector start(pair.size());
    if (r == 0) {
      start.setOnes();
    } else {
      Rng rng(opts.seed + static_cast<std::uint64_t>(r));
      for (Eigen::Index k = 0; k < pair.size(); ++k) start(k) = random_phase(rng);
    }
    auto est = alternating_from(pair, start, opts.max_iters, opts.tol, trace);
    if (!have || est.value > best.value) {
      best = std::move(est);
      have = true;
    }
  }
  return best;
}

namespace {

double lambda_max_herm2(double a, double c, Complex b) {
  const double half = 0.5 * (a - c);
  return 0.5 * (a + c) + std::sqrt(half * half + std::norm(b));
}

// Largest eigenvalue of the 3x3 Hermitian matrix [[a, b, c], [., e, f], [., ., i]]
// by the trigonometric solution of the characteristic cubic.
double lambda_max_herm3(double a, double e, double i, Complex b, Complex c, Complex f) {
  const double off = std::norm(b) + std::norm(c) + std::norm(f);
  const double q = (a + e + i) / 3.0;
  const double a0 = a - q, e0 = e - q, i0 = i - q;
  const double p2 = a0 * a0 + e0 * e0 + i0 * i0 + 2.0 * off;
  if (p2 <= 1e-300) return q;
  const double p = std::sqrt(p2 / 6.0);
  // det(A - qI) for Hermitian A
  const double det = a0 * e0 * i0 + 2.0 * (b * f * std::conj(c)).real() - a0 * std::norm(f) - e0 * std::norm(c) -
                     i0 * std::norm(b);
  double r = det / (2.0 * p * p * p);
  r = std::clamp(r, -1.0, 1.0);
  return q + 2.0 * p * std::cos(std::acos(r) / 3.0);
}

// Squared spectral norm of a d x d matrix held column-major in `m`.
template <int D>
double spectral_norm_sq(const std::array<Complex, D * D>& m) {
  // G = M M^*
  auto g = [&](int r, int s) {
    Complex acc = 0;
    for (int k = 0; k < D; ++k) acc += m[k * D + r] * std::conj(m[k * D + s]);
    return acc;
  };
  if constexpr (D == 1) {
    return std::norm(m[0]);
  } else if constexpr (D == 2) {
    return lambda_max_herm2(g(0, 0).real(), g(1, 1).real(), g(0, 1));
  } else {
    return lambda_max_herm3(g(0, 0).real(), g(1, 1).real(), g(2, 2).real(), g(0, 1), g(0, 2), g(1, 2));
  }
}

template <int D>
struct SmallGrid {
  using Mat = std::array<Complex, D * D>;
  std::vector<std::vector<Mat>> terms;  // terms[k][s] = phase_s * x_k y_k^*
  Eigen::Index n;
  int steps;
  double best = -1;
  std::vector<int> idx, best_idx;

  void run(const FramePair& pair, int phase_steps) {
    n = pair.size();
    steps = phase_steps;
    terms.assign(static_cast<std::size_t>(n), std::vector<Mat>(static_cast<std::size_t>(steps)));
    for (Eigen::Index k = 0; k < n; ++k) {
      const CMatrix r = pair.x(k) * pair.y(k).adjoint();
      for (int s = 0; s < steps; ++s) {
        const Complex ph = std::polar(1.0, 2.0 * M_PI * s / steps);
        Mat& t = terms[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
        for (int col = 0; col < D; ++col)
          for (int row = 0; row < D; ++row) t[col * D + row] = ph * r(row, col);
      }
    }
    idx.assign(static_cast<std::size_t>(n), 0);
    best_idx = idx;
    recurse(1, terms[0][0]);
  }

  void recurse(Eigen::Index k, const Mat& partial) {
    if (k == n) {
      const double v = spectral_norm_sq<D>(partial);
      if (v > best) {
        best = v;
        best_idx = idx;
      }
      return;
    }
    Mat next;
    const auto& tk = terms[static_cast<std::size_t>(k)];
    for (int s = 0; s < steps; ++s) {
      const Mat& t = tk[static_cast<std::size_t>(s)];
      for (int e = 0; e < D * D; ++e) next[e] = partial[e] + t[e];
      idx[static_cast<std::size_t>(k)] = s;
      recurse(k + 1, next);
    }
  }
};

std::vector<int> grid_generic(const FramePair& pair, int steps) {
  const Eigen::Index n = pair.size();
  std::vector<int> idx(static_cast<std::size_t>(n), 0), best_idx = idx;
  double best = -1;
  CVector eps(n);
  while (true) {
    for (Eigen::Index k = 0; k < n; ++k) eps(k) = std::polar(1.0, 2.0 * M_PI * idx[static_cast<std::size_t>(k)] / steps);
    const double v = linalg::operator_norm(CMatrix(pair.xs() * eps.asDiagonal() * pair.ys().adjoint()));
    if (v > best) {
      best = v;
      best_idx = idx;
    }
    Eigen::Index k = 1;
    for (; k < n; ++k) {
      if (++idx[static_cast<std::size_t>(k)] < steps) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k >= n) break;
  }
  return best_idx;
}

}  // namespace

MultiplierNormEstimate norm_oracle_grid(const FramePair& pair, int phase_steps) {
  if (pair.size() > kGridMaxTerms)
    throw SizeError("norm_oracle_grid: n = " + std::to_string(pair.size()) + " exceeds " +
                    std::to_string(kGridMaxTerms));
  if (phase_steps < 8) throw std::invalid_argument("norm_oracle_grid: phase_steps must be at least 8");

  std::vector<int> best_idx;
  switch (pair.dim()) {
    case 1: { SmallGrid<1> g; g.run(pair, phase_steps); best_idx = g.best_idx; break; }
    case 2: { SmallGrid<2> g; g.run(pair, phase_steps); best_idx = g.best_idx; break; }
    case 3: { SmallGrid<3> g; g.run(pair, phase_steps); best_idx = g.best_idx; break; }
    default: best_idx = grid_generic(pair, phase_steps);
  }

  CVector eps(pair.size());
  for (Eigen::Index k = 0; k < pair.size(); ++k)
    eps(k) = std::polar(1.0, 2.0 * M_PI * best_idx[static_cast<std::size_t>(k)] / phase_steps);
  const auto trip = linalg::top_singular_triplet(CMatrix(pair.xs() * eps.asDiagonal() * pair.ys().adjoint()));
  MultiplierNormEstimate est;
  est.method = NormMethod::grid;
  est.witness_u = trip.v;
  est.witness_v = trip.u;
  est.witness_mask = eps;
  est.value = bilinear_value(pair, eps, est.witness_u, est.witness_v);
  return est;
}

MultiplierNormEstimate norm_reference(const FramePair& pair, int phase_steps) {
  AlternatingOptions opts;
  opts.restarts = 16;
  auto best = norm_lower_alternating(pair, opts);
  if (pair.size() <= kGridMaxTerms) {
    const auto grid = norm_oracle_grid(pair, phase_steps);
    auto polished = alternating_from(pair, grid.witness_mask, 2000, 1e-15);
    if (polished.value > best.value) best = std::move(polished);
  }
  return best;
}

std::vector<CVector> amplified_apply(const FramePair& pair, const AmplifiedInput& a, std::span<const CVector> us) {
  const Eigen::Index m = a.m();
  if (a.size() != pair.size()) throw std::invalid_argument("amplified_apply: A has wrong number of blocks");
  if (static_cast<Eigen::Index>(us.size()) != m) throw std::invalid_argument("amplified_apply: expected m vectors");
  for (const auto& u : us)
    if (u.size() != pair.dim()) throw std::invalid_argument("amplified_apply: vector dimension mismatch");

  std::vector<CVector> out(static_cast<std::size_t>(m), CVector::Zero(pair.dim()));
  for (Eigen::Index k = 0; k < pair.size(); ++k) {
    const CVector xk = pair.x(k);
    const CVector yk = pair.y(k);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        out[static_cast<std::size_t>(i)] += a.block(k)(i, j) * inner(us[static_cast<std::size_t>(j)], yk) * xk;
  }
  return out;
}

CMatrix amplified_matrix(const FramePair& pair, const AmplifiedInput& a) {
  if (a.size() != pair.size()) throw std::invalid_argument("amplified_matrix: A has wrong number of blocks");
  const Eigen::Index m = a.m();
  const Eigen::Index d = pair.dim();
  CMatrix out = CMatrix::Zero(m * d, m * d);
  for (Eigen::Index k = 0; k < pair.size(); ++k) {
    const CMatrix r = pair.x(k) * pair.y(k).adjoint();
    const CMatrix& ak = a.block(k);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i)
        if (ak(i, j) != Complex(0)) out.block(i * d, j * d, d, d) += ak(i, j) * r;
  }
  return out;
}

double cb_lower_sampled(const FramePair& pair, const CbSampleOptions& opts, std::span<const ScalarMask> extra_masks) {
  if (opts.m < 1) throw std::invalid_argument("cb_lower_sampled: m must be at least 1");
  const Eigen::Index m = opts.m;
  const Eigen::Index n = pair.size();
  double best = linalg::operator_norm(amplified_matrix(pair, AmplifiedInput::identity(m, n)));

  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      if (s % 2 == 0) {
        blocks.push_back(random_unitary(m, rng));
      } else {
        CVector phases(m);
        for (Eigen::Index i = 0; i < m; ++i) phases(i) = random_phase(rng);
        blocks.push_back(phases.asDiagonal());
      }
    }
    const AmplifiedInput a(m, std::move(blocks));
    best = std::max(best, linalg::operator_norm(amplified_matrix(pair, a)));
  }
  for (const auto& mask : extra_masks) {
    if (mask.size() != n) throw std::invalid_argument("cb_lower_sampled: extra mask length mismatch");
    best = std::max(best, linalg::operator_norm(amplified_matrix(pair, AmplifiedInput::diagonal(m, mask))));
  }
  return best;
}

}  // namespace schauder
