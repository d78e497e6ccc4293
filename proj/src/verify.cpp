#include "schauder/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "schauder/errors.hpp"
#include "schauder/generators.hpp"
#include "schauder/linalg.hpp"

namespace schauder::verify {

RademacherEnsemble::RademacherEnsemble(int m) : m_(m) {
  if (m < 0 || m > kMaxTerms) throw SizeError("RademacherEnsemble: m = " + std::to_string(m) + " out of range");
}

double RademacherEnsemble::average(const std::function<double(std::span<const double>)>& f) const {
  std::vector<double> signs(static_cast<std::size_t>(m_));
  double sum = 0;
  for (std::uint64_t p = 0; p < patterns(); ++p) {
    for (int j = 0; j < m_; ++j) signs[static_cast<std::size_t>(j)] = sign(p, j);
    sum += f(signs);
  }
  return sum / static_cast<double>(patterns());
}

double RademacherEnsemble::dyadic_integral(const std::function<double(std::span<const double>)>& f) const {
  // r_1..r_m are constant on each interval [i 2^-m, (i+1) 2^-m); sample the midpoint.
  std::vector<double> values(static_cast<std::size_t>(m_));
  const double width = 1.0 / static_cast<double>(patterns());
  double sum = 0;
  for (std::uint64_t i = 0; i < patterns(); ++i) {
    const double t = (static_cast<double>(i) + 0.5) * width;
    for (int j = 0; j < m_; ++j) {
      const double s = std::sin(std::ldexp(M_PI * t, j + 1));
      values[static_cast<std::size_t>(j)] = s > 0 ? 1.0 : -1.0;
    }
    sum += f(values) * width;
  }
  return sum;
}

KhintchineResult khintchine_check(std::span<const Complex> a) {
  const int m = static_cast<int>(a.size());
  if (m > kKhintchineMaxTerms)
    throw SizeError("khintchine_check: " + std::to_string(m) + " coefficients exceed " +
                    std::to_string(kKhintchineMaxTerms));
  const RademacherEnsemble ens(m);
  KhintchineResult out;
  out.lhs = ens.average([&](std::span<const double> r) {
    Complex s = 0;
    for (int k = 0; k < m; ++k) s += a[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(k)];
    return std::abs(s);
  });
  double sq = 0;
  for (const auto& c : a) sq += std::norm(c);
  out.rhs = kKhintchineGamma * std::sqrt(sq);
  out.ratio = out.rhs > 0 ? out.lhs / out.rhs : 1.0;
  out.ok = out.lhs >= out.rhs - 1e-12;
  return out;
}

RankOneTraceResult rank_one_trace_check(const CVector& alpha, const CVector& beta) {
  if (alpha.size() == 0 || alpha.size() != beta.size())
    throw std::invalid_argument("rank_one_trace_check: need two vectors of equal positive length");
  RankOneTraceResult out;
  out.closed_form = alpha.norm() * beta.norm();
  out.svd_value = linalg::trace_norm(CMatrix(alpha * beta.transpose()));
  out.ok = std::abs(out.closed_form - out.svd_value) <= kIdentityTol * std::max(1.0, out.closed_form);
  return out;
}

SlackResult key_simple_check(const FramePair& pair, const CVector& u, const CVector& v, double phi_norm) {
  const RVector uy = (pair.ys().adjoint() * u).cwiseAbs();
  const RVector vx = (pair.xs().adjoint() * v).cwiseAbs();
  SlackResult out;
  out.slack = phi_norm * u.norm() * v.norm() - uy.dot(vx);
  out.scale = phi_norm * std::max(1.0, u.norm() * v.norm());
  out.ok = out.slack >= -kInequalityTol * out.scale;
  return out;
}

namespace {

void check_families(std::span<const CVector> us, std::span<const CVector> vs, Eigen::Index d, const char* what) {
  if (us.empty() || us.size() != vs.size())
    throw std::invalid_argument(std::string(what) + ": need m >= 1 vectors in both families");
  for (std::size_t i = 0; i < us.size(); ++i)
    if (us[i].size() != d || vs[i].size() != d) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// coeffs(j, k) = <w_j, z_k> for vectors w_j and the columns z_k of `family`.
CMatrix pairings(std::span<const CVector> ws, const CMatrix& family) {
  CMatrix out(static_cast<Eigen::Index>(ws.size()), family.cols());
  for (std::size_t j = 0; j < ws.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = (family.adjoint() * ws[j]).transpose();
  return out;
}

double sum_sq_norms(std::span<const CVector> ws) {
  double s = 0;
  for (const auto& w : ws) s += w.squaredNorm();
  return s;
}

}  // namespace

CMatrix rank_one_block(const FramePair& pair, Eigen::Index k, std::span<const CVector> us,
                       std::span<const CVector> vs) {
  check_families(us, vs, pair.dim(), "rank_one_block");
  const Eigen::Index m = static_cast<Eigen::Index>(us.size());
  CMatrix b(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      b(i, j) = inner(us[static_cast<std::size_t>(j)], pair.y(k)) * inner(pair.x(k), vs[static_cast<std::size_t>(i)]);
  return b;
}

SuperKeyResult super_key_check(const FramePair& pair, std::span<const CVector> us, std::span<const CVector> vs,
                               double phi_norm) {
  check_families(us, vs, pair.dim(), "super_key_check");
  const int m = static_cast<int>(us.size());
  const CMatrix uy = pairings(us, pair.ys());  // (j, k) -> <u_j, y_k>
  const CMatrix vx = pairings(vs, pair.xs());  // (i, k) -> <v_i, x_k>
  const double norm_u = std::sqrt(sum_sq_norms(us));
  const double norm_v = std::sqrt(sum_sq_norms(vs));
  const double scale = phi_norm * std::max(1.0, norm_u * norm_v);

  SuperKeyResult out;
  for (Eigen::Index k = 0; k < pair.size(); ++k) out.lhs += uy.col(k).norm() * vx.col(k).norm();
  out.rhs = 2.0 * phi_norm * norm_u * norm_v;
  out.slack = out.rhs - out.lhs;

  double trace_sum = 0;
  for (Eigen::Index k = 0; k < pair.size(); ++k) trace_sum += linalg::trace_norm(rank_one_block(pair, k, us, vs));
  out.trace_form_residual = trace_sum - out.lhs;
  const bool trace_form_ok = std::abs(out.trace_form_residual) <= kIdentityTol * std::max(1.0, out.lhs);
  out.ok = out.slack >= -kInequalityTol * scale && trace_form_ok;

  if (m > kChainMaxTerms) return out;
  out.chain_checked = true;
  const RademacherEnsemble ens(m);
  auto mean_abs = [&](const CMatrix& coeffs, Eigen::Index k) {
    return ens.average([&](std::span<const double> r) {
      Complex s = 0;
      for (int j = 0; j < m; ++j) s += r[static_cast<std::size_t>(j)] * coeffs(j, k);
      return std::abs(s);
    });
  };
  for (Eigen::Index k = 0; k < pair.size(); ++k) out.rademacher_average += mean_abs(uy, k) * mean_abs(vx, k);

  auto vector_moments = [&](std::span<const CVector> ws) {
    double first = 0, second = 0;
    ens.average([&](std::span<const double> r) {
      CVector s = CVector::Zero(pair.dim());
      for (int j = 0; j < m; ++j) s += r[static_cast<std::size_t>(j)] * ws[static_cast<std::size_t>(j)];
      first += s.norm();
      second += s.squaredNorm();
      return 0.0;
    });
    const double count = static_cast<double>(ens.patterns());
    return std::pair{first / count, std::sqrt(second / count)};
  };
  const auto [mean_u, rms_u] = vector_moments(us);
  const auto [mean_v, rms_v] = vector_moments(vs);
  out.khintchine_lower = kKhintchineGamma * kKhintchineGamma * out.lhs;
  out.norm_average = phi_norm * mean_u * mean_v;
  out.l2_bound = phi_norm * rms_u * rms_v;
  out.orthogonality_residual = std::abs(out.l2_bound - phi_norm * norm_u * norm_v);

  const double tiny = kInequalityTol * scale;
  out.chain_ok = out.khintchine_lower <= out.rademacher_average + tiny &&
                 out.rademacher_average <= out.norm_average + tiny && out.norm_average <= out.l2_bound + tiny &&
                 out.orthogonality_residual <= kIdentityTol * std::max(1.0, out.l2_bound);
  out.ok = out.ok && out.chain_ok;
  return out;
}

TracePairingResult trace_pairing_check(const FramePair& pair, const AmplifiedInput& a, std::span<const CVector> us,
                                       std::span<const CVector> vs) {
  check_families(us, vs, pair.dim(), "trace_pairing_check");
  if (static_cast<Eigen::Index>(us.size()) != a.m() || a.size() != pair.size())
    throw std::invalid_argument("trace_pairing_check: shape mismatch");

  TracePairingResult out;
  double trace_norm_sum = 0;
  for (Eigen::Index k = 0; k < pair.size(); ++k) {
    const CMatrix b = rank_one_block(pair, k, us, vs);
    out.trace_side += (a.block(k) * b.transpose()).trace();
    trace_norm_sum += linalg::trace_norm(b);
  }
  const auto images = amplified_apply(pair, a, us);
  for (std::size_t i = 0; i < us.size(); ++i) out.sum_side += inner(images[i], vs[i]);

  out.holder_bound = a.norm() * trace_norm_sum;
  out.scale = std::max(1.0, out.holder_bound);
  out.residual = std::abs(out.trace_side - out.sum_side);
  out.ok = out.residual <= kIdentityTol * out.scale &&
           std::abs(out.trace_side) <= out.holder_bound + kInequalityTol * out.scale;
  return out;
}

SlackResult holder_trace_check(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("holder_trace_check: need square matrices of equal size");
  SlackResult out;
  const double bound = linalg::operator_norm(a) * linalg::trace_norm(b);
  out.slack = bound - std::abs((a * b).trace());
  out.scale = std::max(1.0, bound);
  out.ok = out.slack >= -kIdentityTol * out.scale;
  return out;
}

DilationResult dilation_check(const FramePair& pair, int random_masks, std::uint64_t seed) {
  OptimizeOptions opts;
  opts.compute_lower = false;
  const auto bracket = optimize(pair, opts);
  const Dilation dil = build_dilation(pair, bracket.weights, bracket.m_upper);

  DilationResult out;
  out.scale = std::max(1.0, bracket.m_upper);
  const CMatrix id = CMatrix::Identity(pair.dim(), pair.dim());
  out.isometry_residual_1 = linalg::operator_norm(CMatrix(dil.v1.adjoint() * dil.v1 - id));
  out.isometry_residual_2 = linalg::operator_norm(CMatrix(dil.v2.adjoint() * dil.v2 - id));

  const Eigen::Index n = pair.size();
  std::vector<ScalarMask> masks;
  for (Eigen::Index k = 0; k < n; ++k) masks.push_back(ScalarMask::unit(n, k));
  masks.push_back(ScalarMask::ones(n));
  Rng rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  for (int r = 0; r < random_masks; ++r) {
    CVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = radius(rng) * random_phase(rng);
    masks.emplace_back(std::move(v));
  }

  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      if (k != l) {
        const CVector prod = dil.representation(masks[static_cast<std::size_t>(k)])
                                 .cwiseProduct(dil.representation(masks[static_cast<std::size_t>(l)]));
        out.orthogonality_residual = std::max(out.orthogonality_residual, prod.cwiseAbs().maxCoeff());
      }
  for (const auto& mask : masks) {
    const CMatrix diff = dilation_reconstruct(dil, mask) - mask_matrix(pair, mask);
    out.max_reconstruction = std::max(out.max_reconstruction, linalg::operator_norm(diff));
  }
  out.ok = out.isometry_residual_1 <= kIdentityTol && out.isometry_residual_2 <= kIdentityTol &&
           out.orthogonality_residual == 0.0 && out.max_reconstruction <= kIdentityTol * out.scale;
  return out;
}

FramePair ratio_instance(const RatioConfig& cfg, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);
  std::uniform_int_distribution<Eigen::Index> pick_n(1, cfg.n_max), pick_d(1, cfg.d_max);
  const Eigen::Index n = pick_n(rng);
  const Eigen::Index d = pick_d(rng);
  return gen::mangle(gen::gaussian(n, d, rng), cfg.scale_lo, cfg.scale_hi, rng);
}

bool ratio_record_ok(const RatioConfig& cfg, const RatioRecord& rec) {
  // grid <= ||Phi|| <= ||Phi||_cb <= M_upper, so the ratio can never drop below 1
  return rec.ratio <= cfg.bound && rec.ratio >= 1.0 - kInequalityTol && rec.m_lower <= rec.m_upper + 1e-8;
}

RatioReport ratio_experiment(const RatioConfig& cfg) {
  if (cfg.n_max < 1 || cfg.d_max < 1 || cfg.n_max > kGridMaxTerms)
    throw SizeError("ratio_experiment: sizes outside the grid oracle's range");
  RatioReport report;
  report.records = detail::parallel_map<RatioRecord>(cfg.instances, [&](int i) {
    const FramePair pair = ratio_instance(cfg, i);
    const auto bracket = optimize(pair);
    const auto grid = norm_oracle_grid(pair, cfg.phase_steps);
    RatioRecord rec;
    rec.index = i;
    rec.n = pair.size();
    rec.d = pair.dim();
    rec.m_upper = bracket.m_upper;
    rec.m_lower = bracket.m_lower;
    rec.phi_grid = grid.value;
    rec.phi_alternating = norm_lower_alternating(pair).value;
    rec.ratio = bracket.m_upper / grid.value;
    return rec;
  });
  for (const auto& rec : report.records) {
    report.max_ratio = std::max(report.max_ratio, rec.ratio);
    if (!ratio_record_ok(cfg, rec)) ++report.failures;
  }
  return report;
}

EndToEndReport end_to_end_rescale_check(const FramePair& pair, double tol, const OptimizeOptions& opts) {
  const double deviation = schauder_deviation(pair);
  if (!(deviation <= tol))
    throw std::invalid_argument("not a Schauder frame: ||T - I|| = " + std::to_string(deviation));

  EndToEndReport out;
  out.bracket = optimize(pair, opts);
  out.scaling = extract_scaling(pair, out.bracket.weights);
  const FramePair scaled = pair.reparameterized(out.scaling.alpha);
  out.x_bounds = bessel_and_frame_bounds(scaled.xs());
  out.y_bounds = bessel_and_frame_bounds(scaled.ys());
  out.schauder_deviation_after = schauder_deviation(scaled);

  double budget = 0;
  for (Eigen::Index k = 0; k < pair.size(); ++k) budget += pair.x(k).norm() * pair.y(k).norm();
  const double m = out.bracket.m_upper;
  out.ok = out.x_bounds.is_frame && out.y_bounds.is_frame && out.x_bounds.upper <= m + 1e-8 &&
           out.y_bounds.upper <= m + 1e-8 && out.schauder_deviation_after <= tol + 1e-13 * budget;
  return out;
}

}  // namespace schauder::verify
