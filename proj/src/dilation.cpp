#include <cmath>
#include <stdexcept>
#include <string>

#include "schauder/linalg.hpp"
#include "schauder/rescale.hpp"

namespace schauder {

CVector Dilation::representation(const ScalarMask& a) const {
  if (a.size() != n) throw std::invalid_argument("Dilation: mask length mismatch");
  CVector diag(big_dim());
  diag.head(n) = a.values();
  diag.tail(2 * d).setConstant(a(0));
  return diag;
}

Dilation build_dilation(const FramePair& pair, const LogWeights& weights, double m) {
  if (weights.size() != pair.size()) throw std::invalid_argument("build_dilation: log-weights length mismatch");
  if (!(m > 0) || !std::isfinite(m)) throw std::invalid_argument("build_dilation: scale must be positive");

  const Eigen::Index n = pair.size();
  const Eigen::Index d = pair.dim();
  const RVector w = weights.weights();
  const CMatrix wx = pair.xs() * w.cast<Complex>().asDiagonal();
  const CMatrix wy = pair.ys() * w.cwiseInverse().cast<Complex>().asDiagonal();

  const double slack = 1e-10 * std::max(1.0, m);
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix pad_x, pad_y;
  try {
    pad_x = linalg::psd_sqrt(CMatrix(id - frame_operator(wx) / m), slack / m);
    pad_y = linalg::psd_sqrt(CMatrix(id - frame_operator(wy) / m), slack / m);
  } catch (const NotPsdError&) {
    throw NotPsdError("build_dilation: a weighted family is not " + std::to_string(m) + "-Bessel");
  }

  Dilation dil;
  dil.n = n;
  dil.d = d;
  dil.scale = m;
  const double inv_root = 1.0 / std::sqrt(m);
  // (V2 u)_k = M^{-1/2} <u, w_k^{-1} y_k>, then the y padding, then zero.
  dil.v2 = CMatrix::Zero(n + 2 * d, d);
  dil.v2.topRows(n) = inv_root * wy.adjoint();
  dil.v2.middleRows(n, d) = pad_y;
  // (V1 v)_k = M^{-1/2} <v, w_k x_k>, then zero, then the x padding.
  dil.v1 = CMatrix::Zero(n + 2 * d, d);
  dil.v1.topRows(n) = inv_root * wx.adjoint();
  dil.v1.bottomRows(d) = pad_x;
  return dil;
}

CMatrix dilation_reconstruct(const Dilation& dil, const ScalarMask& a) {
  return dil.scale * dil.v1.adjoint() * dil.representation(a).asDiagonal() * dil.v2;
}

}  // namespace schauder
