#include "schauder/frames.hpp"

#include <stdexcept>
#include <string>

#include "schauder/linalg.hpp"

namespace schauder {

namespace {

CMatrix stack_columns(std::span<const CVector> vectors, const char* what) {
  if (vectors.empty()) throw std::invalid_argument(std::string(what) + ": empty vector list");
  const Eigen::Index d = vectors.front().size();
  CMatrix out(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != d)
      throw std::invalid_argument(std::string(what) + ": dimension mismatch at vector " + std::to_string(k));
    out.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return out;
}

void validate_family(const CMatrix& m, const char* name) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    if (!m.col(k).allFinite())
      throw std::invalid_argument(std::string("FramePair: non-finite entry in ") + name + "[" + std::to_string(k) + "]");
    if (!(m.col(k).norm() > kZeroVectorTol))
      throw std::invalid_argument(std::string("FramePair: zero vector ") + name + "[" + std::to_string(k) + "]");
  }
}

}  // namespace

FramePair::FramePair(CMatrix xs, CMatrix ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.rows() == 0 || xs_.cols() == 0) throw std::invalid_argument("FramePair: empty pair");
  if (xs_.rows() != ys_.rows() || xs_.cols() != ys_.cols())
    throw std::invalid_argument("FramePair: x and y families differ in shape");
  validate_family(xs_, "x");
  validate_family(ys_, "y");
}

FramePair FramePair::from_vectors(std::span<const CVector> xs, std::span<const CVector> ys) {
  return FramePair(stack_columns(xs, "FramePair"), stack_columns(ys, "FramePair"));
}

FramePair FramePair::reparameterized(const CVector& alpha) const {
  if (alpha.size() != size()) throw std::invalid_argument("reparameterized: scalar count mismatch");
  CMatrix xs = xs_;
  CMatrix ys = ys_;
  for (Eigen::Index k = 0; k < size(); ++k) {
    if (alpha(k) == Complex(0)) throw std::invalid_argument("reparameterized: zero scalar");
    xs.col(k) *= alpha(k);
    ys.col(k) /= std::conj(alpha(k));
  }
  return FramePair(std::move(xs), std::move(ys));
}

FramePair FramePair::rotated(const CMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim()) throw std::invalid_argument("rotated: matrix shape mismatch");
  return FramePair(u * xs_, u * ys_);
}

CMatrix frame_operator(const CMatrix& vectors) {
  if (vectors.cols() == 0 || vectors.rows() == 0) throw std::invalid_argument("frame_operator: empty vector list");
  CMatrix s = vectors * vectors.adjoint();
  return (s + s.adjoint()) / 2.0;
}

CMatrix frame_operator(std::span<const CVector> vectors) {
  return frame_operator(stack_columns(vectors, "frame_operator"));
}

FrameBounds bessel_and_frame_bounds(const CMatrix& vectors, double frame_tol) {
  const auto eig = linalg::hermitian_extreme_eig(frame_operator(vectors));
  FrameBounds out;
  out.lower = std::max(0.0, eig.lambda_min);
  out.upper = std::max(0.0, eig.lambda_max);
  out.is_frame = out.lower > frame_tol;
  return out;
}

FrameBounds bessel_and_frame_bounds(std::span<const CVector> vectors, double frame_tol) {
  return bessel_and_frame_bounds(stack_columns(vectors, "bessel_and_frame_bounds"), frame_tol);
}

CMatrix pair_operator(const FramePair& pair) { return pair.xs() * pair.ys().adjoint(); }

double schauder_deviation(const FramePair& pair) {
  const CMatrix diff = pair_operator(pair) - CMatrix::Identity(pair.dim(), pair.dim());
  return linalg::operator_norm(diff);
}

bool is_schauder_identity(const FramePair& pair, double tol) { return schauder_deviation(pair) <= tol; }

}  // namespace schauder
