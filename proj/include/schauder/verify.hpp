#pragma once

// Executable checks of the inequalities and identities behind the bound
// ||Phi||_cb <= 2 ||Phi|| for maps with rank-one Phi(e_k), and of the
// rescaling results built on it. Every check returns its measured values
// together with a verdict at the documented tolerance.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "schauder/frames.hpp"
#include "schauder/multiplier.hpp"
#include "schauder/rescale.hpp"

namespace schauder::verify {

/// Identities are checked at this relative tolerance.
inline constexpr double kIdentityTol = 1e-10;
/// Inequalities may be violated by at most this fraction of their scale.
inline constexpr double kInequalityTol = 1e-9;
/// Optimal Khintchine L1 constant.
inline constexpr double kKhintchineGamma = 0.70710678118654752440;

/// All 2^m sign patterns of the first m Rademacher functions, each of
/// probability 2^-m. Averages over the ensemble are integrals over [0, 1].
class RademacherEnsemble {
 public:
  static constexpr int kMaxTerms = 24;
  explicit RademacherEnsemble(int m);

  int m() const { return m_; }
  std::uint64_t patterns() const { return std::uint64_t{1} << m_; }
  /// sigma_j of pattern p, j = 0..m-1.
  static double sign(std::uint64_t pattern, int j) { return (pattern >> j) & 1U ? -1.0 : 1.0; }

  /// Mean of f over all sign patterns.
  double average(const std::function<double(std::span<const double>)>& f) const;

  /// The same mean computed from the definition r_j(t) = sign sin(2^j pi t),
  /// j = 1..m, integrated exactly over the 2^m dyadic intervals of [0, 1].
  double dyadic_integral(const std::function<double(std::span<const double>)>& f) const;

 private:
  int m_;
};

inline constexpr int kKhintchineMaxTerms = 14;

struct KhintchineResult {
  double lhs = 0;    // E |sum a_k r_k|
  double rhs = 0;    // (1/sqrt 2) (sum |a_k|^2)^{1/2}
  double ratio = 0;  // lhs / rhs
  bool ok = false;   // lhs >= rhs - 1e-12
};

/// Throws SizeError for more than kKhintchineMaxTerms coefficients.
KhintchineResult khintchine_check(std::span<const Complex> a);

struct RankOneTraceResult {
  double closed_form = 0;  // |alpha| |beta|
  double svd_value = 0;    // trace norm of (alpha_i beta_j)
  bool ok = false;
};

RankOneTraceResult rank_one_trace_check(const CVector& alpha, const CVector& beta);

struct SlackResult {
  double slack = 0;
  double scale = 0;
  bool ok = false;
};

/// slack = phi_norm |u||v| - sum_k |<u, y_k>| |<v, x_k>|.
SlackResult key_simple_check(const FramePair& pair, const CVector& u, const CVector& v, double phi_norm);

/// B_k = (<u_j, y_k> <x_k, v_i>)_{i,j}.
CMatrix rank_one_block(const FramePair& pair, Eigen::Index k, std::span<const CVector> us,
                       std::span<const CVector> vs);

inline constexpr int kChainMaxTerms = 10;

struct SuperKeyResult {
  double lhs = 0;  // sum_k (sum_j |<u_j,y_k>|^2)^{1/2} (sum_i |<v_i,x_k>|^2)^{1/2}
  double rhs = 0;  // 2 phi_norm (sum |u_j|^2)^{1/2} (sum |v_i|^2)^{1/2}
  double slack = 0;
  bool ok = false;
  /// Rademacher chain, filled when m <= kChainMaxTerms.
  bool chain_checked = false;
  bool chain_ok = false;
  double khintchine_lower = 0;   // gamma^2 * lhs
  double rademacher_average = 0; // sum_k E_t|sum_j r_j <u_j,y_k>| E_s|sum_i r_i <v_i,x_k>|
  double norm_average = 0;       // phi_norm E_t|sum r_j u_j| E_s|sum r_i v_i|
  double l2_bound = 0;           // phi_norm (E_t|.|^2)^{1/2} (E_s|.|^2)^{1/2}
  double orthogonality_residual = 0;  // |l2_bound - phi_norm (sum|u|^2)^{1/2} (sum|v|^2)^{1/2}|
  /// sum_k ||B_k||_1 minus lhs (trace-norm form of the left side).
  double trace_form_residual = 0;
};

SuperKeyResult super_key_check(const FramePair& pair, std::span<const CVector> us, std::span<const CVector> vs,
                               double phi_norm);

struct TracePairingResult {
  double residual = 0;
  double scale = 0;
  Complex trace_side = 0;     // sum_k tr(A_k B_k^t)
  Complex sum_side = 0;       // sum_{k,i,j} a_ij(k) <u_j,y_k><x_k,v_i>
  double holder_bound = 0;    // ||A|| sum_k ||B_k||_1
  bool ok = false;
};

TracePairingResult trace_pairing_check(const FramePair& pair, const AmplifiedInput& a, std::span<const CVector> us,
                                       std::span<const CVector> vs);

/// slack = ||A|| ||B||_1 - |tr(AB)|.
SlackResult holder_trace_check(const CMatrix& a, const CMatrix& b);

struct DilationResult {
  double isometry_residual_1 = 0;  // ||V1^* V1 - I||
  double isometry_residual_2 = 0;
  double orthogonality_residual = 0;  // max_{k != l} ||pi(e_k) pi(e_l)||
  double max_reconstruction = 0;      // max over masks of ||M V1^* pi(a) V2 - mask_matrix(a)||
  double scale = 0;
  bool ok = false;
};

/// Builds the dilation at the optimizer's weights and checks it on the unit
/// masks, the all-ones mask and `random_masks` random masks.
DilationResult dilation_check(const FramePair& pair, int random_masks, std::uint64_t seed);

struct RatioConfig {
  int instances = 200;
  Eigen::Index n_max = 5;
  Eigen::Index d_max = 3;
  double scale_lo = 1e-3;
  double scale_hi = 1e3;
  std::uint64_t seed = 1;
  int phase_steps = 48;
  double bound = 2.0 * 1.05;
};

struct RatioRecord {
  int index = 0;
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  double m_upper = 0;
  double m_lower = 0;
  double phi_grid = 0;
  double phi_alternating = 0;
  double ratio = 0;
};

struct RatioReport {
  std::vector<RatioRecord> records;
  double max_ratio = 0;
  int failures = 0;
};

/// The instance ratio_experiment draws for `index`: Gaussian pair with
/// n in [1, n_max], d in [1, d_max], mangled by the configured scale range.
FramePair ratio_instance(const RatioConfig& cfg, int index);

/// Pass criterion of one record: 1 - 1e-9 <= ratio <= bound and M_lower <= M_upper + 1e-8.
bool ratio_record_ok(const RatioConfig& cfg, const RatioRecord& rec);

RatioReport ratio_experiment(const RatioConfig& cfg);

struct EndToEndReport {
  CbBracket bracket;
  Scaling scaling;
  FrameBounds x_bounds;
  FrameBounds y_bounds;
  double schauder_deviation_after = 0;
  bool ok = false;
};

/// Throws std::invalid_argument ("not a Schauder frame") unless the pair
/// operator is the identity within tol.
EndToEndReport end_to_end_rescale_check(const FramePair& pair, double tol = 1e-10,
                                        const OptimizeOptions& opts = {});

}  // namespace schauder::verify
