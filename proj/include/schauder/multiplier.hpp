#pragma once

// The multiplier map Phi: l^inf_n -> B(C^d), Phi(a) u = sum_k a(k) <u, y_k> x_k,
// its amplifications Phi_(m), and estimators of ||Phi|| and ||Phi||_cb.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "schauder/frames.hpp"

namespace schauder {

inline constexpr double kMaskTol = 1e-12;

/// Complex scalars eps_k with |eps_k| <= 1.
class ScalarMask {
 public:
  explicit ScalarMask(CVector values);
  static ScalarMask ones(Eigen::Index n) { return ScalarMask(CVector::Ones(n)); }
  static ScalarMask zeros(Eigen::Index n) { return ScalarMask(CVector::Zero(n)); }
  static ScalarMask unit(Eigen::Index n, Eigen::Index k);

  Eigen::Index size() const { return values_.size(); }
  const CVector& values() const { return values_; }
  Complex operator()(Eigen::Index k) const { return values_(k); }

 private:
  CVector values_;
};

enum class NormMethod { alternating, grid, sampled };
std::string_view to_string(NormMethod m);

/// Certified lower bound on ||Phi||: value == Re sum_k eps_k <u, y_k><x_k, v>
/// at the stored witness (u, v, eps).
struct MultiplierNormEstimate {
  double value = 0;
  CVector witness_u;
  CVector witness_v;
  CVector witness_mask;
  NormMethod method = NormMethod::alternating;
  int iterations = 0;
};

/// Re sum_k eps_k <u, y_k><x_k, v> = Re <Phi(eps) u, v>.
double bilinear_value(const FramePair& pair, const CVector& mask, const CVector& u, const CVector& v);

/// A in M_m(l^inf_n), stored as n complex m x m blocks A_k.
class AmplifiedInput {
 public:
  AmplifiedInput(Eigen::Index m, std::vector<CMatrix> blocks);
  static AmplifiedInput identity(Eigen::Index m, Eigen::Index n);
  static AmplifiedInput diagonal(Eigen::Index m, const ScalarMask& mask);

  Eigen::Index m() const { return m_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(blocks_.size()); }
  const CMatrix& block(Eigen::Index k) const { return blocks_[static_cast<std::size_t>(k)]; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  /// max_k ||A_k||.
  double norm() const;

 private:
  Eigen::Index m_;
  std::vector<CMatrix> blocks_;
};

CVector apply(const FramePair& pair, const ScalarMask& a, const CVector& u);

/// sum_k eps_k x_k y_k^*.
CMatrix mask_matrix(const FramePair& pair, const ScalarMask& eps);

struct AlternatingOptions {
  int restarts = 8;
  int max_iters = 500;
  double tol = 1e-13;
  std::uint64_t seed = 0x5eedULL;
};

/// Alternating ascent over (mask, singular pair). Restart 0 starts from the
/// all-ones mask, the rest from seeded random phases. When `trace` is given,
/// the objective after every phase-alignment step of every restart is
/// appended to it.
MultiplierNormEstimate norm_lower_alternating(const FramePair& pair, const AlternatingOptions& opts = {},
                                              std::vector<double>* trace = nullptr);

/// Ascent started from one given mask.
MultiplierNormEstimate alternating_from(const FramePair& pair, const CVector& start_mask, int max_iters,
                                        double tol, std::vector<double>* trace = nullptr);

inline constexpr Eigen::Index kGridMaxTerms = 6;

/// max of ||mask_matrix(eps)|| over eps_k in the phase_steps-th roots of unity.
/// eps_1 is pinned to 1, which loses nothing since a common phase leaves the
/// norm unchanged.
MultiplierNormEstimate norm_oracle_grid(const FramePair& pair, int phase_steps);

/// Grid oracle followed by alternating ascent from the best grid mask, combined
/// with the multi-start alternating estimate. Near-exact for small n.
MultiplierNormEstimate norm_reference(const FramePair& pair, int phase_steps = 48);

/// Component i of the output is sum_j sum_k a_ij(k) <u_j, y_k> x_k.
std::vector<CVector> amplified_apply(const FramePair& pair, const AmplifiedInput& a, std::span<const CVector> us);

/// The md x md operator Phi_(m)(A), block (i, j) = sum_k a_ij(k) x_k y_k^*.
CMatrix amplified_matrix(const FramePair& pair, const AmplifiedInput& a);

struct CbSampleOptions {
  Eigen::Index m = 2;
  int samples = 16;
  std::uint64_t seed = 0xcb5eedULL;
};

/// Lower bound on ||Phi||_cb: max of ||Phi_(m)(A)|| over the all-identity
/// input, `samples` random inputs (alternating Haar-unitary and diagonal-phase
/// blocks) and the diagonal embeddings A_k = eps_k I of any extra masks.
double cb_lower_sampled(const FramePair& pair, const CbSampleOptions& opts,
                        std::span<const ScalarMask> extra_masks = {});

}  // namespace schauder
