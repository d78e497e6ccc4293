#pragma once

// Seeded instance generators for tests, experiments and the CLI.

#include <string_view>

#include "schauder/frames.hpp"
#include "schauder/random.hpp"

namespace schauder::gen {

/// x_k = y_k = e_k, k = 1..d.
FramePair orthonormal(Eigen::Index d);

/// Independent complex Gaussian x_k, y_k.
FramePair gaussian(Eigen::Index n, Eigen::Index d, Rng& rng);

/// Random Gaussian frame (n >= d) with its canonical dual y_k = S^{-1} x_k,
/// resampled until the pair operator is I within 1e-10.
FramePair canonical_dual(Eigen::Index n, Eigen::Index d, Rng& rng);

/// Canonical dual of a random tight frame (rows of a Haar unitary), S = (n/d) I.
FramePair tight_canonical_dual(Eigen::Index n, Eigen::Index d, Rng& rng);

/// The standard basis followed by the columns of a Haar unitary; x_k = y_k.
FramePair onb_union(Eigen::Index d, Rng& rng);

/// d = 1 instance with log-uniform magnitudes in [1e-2, 1e2] and random phases.
FramePair d1_scalars(Eigen::Index n, Rng& rng);

/// (beta_k x_k, conj(beta_k)^{-1} y_k), |beta_k| log-uniform in [lo, hi],
/// random phases.
FramePair mangle(const FramePair& pair, double lo, double hi, Rng& rng);

}  // namespace schauder::gen
