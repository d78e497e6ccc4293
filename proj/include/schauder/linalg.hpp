#pragma once

// Dense linear-algebra kernel: Hermitian extreme eigenpairs, top singular
// triplets, trace norm and PSD square roots. All routines accept any Eigen
// dense expression and are templated on its scalar type.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "schauder/errors.hpp"

namespace schauder::linalg {

inline constexpr double kDefaultTol = 1e-10;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  using Real = typename Derived::RealScalar;
  const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

template <typename Scalar>
struct ExtremeEigenpairs {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Real lambda_min{};
  Real lambda_max{};
  Vector<Scalar> v_min;
  Vector<Scalar> v_max;
};

/// Smallest and largest eigenpairs of a Hermitian matrix.
///
/// Throws std::invalid_argument for non-square or non-Hermitian input and
/// ConvergenceError when the solver fails or the residuals
/// |Mv - lambda v| exceed tol * (1 + |lambda_max|).
template <typename Derived>
ExtremeEigenpairs<typename Derived::Scalar> hermitian_extreme_eig(
    const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol = kDefaultTol) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument("hermitian_extreme_eig: matrix must be square and nonempty");
  require_finite(m, "hermitian_extreme_eig");
  if (!is_hermitian(m)) throw std::invalid_argument("hermitian_extreme_eig: matrix is not Hermitian");

  const Matrix<Scalar> a = m;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(a);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("hermitian_extreme_eig: eigensolver did not converge");

  const Eigen::Index last = a.rows() - 1;
  ExtremeEigenpairs<Scalar> out;
  out.lambda_min = solver.eigenvalues()(0);
  out.lambda_max = solver.eigenvalues()(last);
  out.v_min = solver.eigenvectors().col(0);
  out.v_max = solver.eigenvectors().col(last);

  const Real bound = tol * (Real(1) + std::abs(out.lambda_max));
  const Real r_max = (a * out.v_max - out.lambda_max * out.v_max).norm();
  const Real r_min = (a * out.v_min - out.lambda_min * out.v_min).norm();
  if (!(r_max <= bound) || !(r_min <= bound))
    throw ConvergenceError("hermitian_extreme_eig: residual above tolerance");
  return out;
}

template <typename Scalar>
struct SingularTriplet {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Real sigma{};
  Vector<Scalar> u;  // left: M v = sigma u
  Vector<Scalar> v;  // right
};

template <typename Derived>
SingularTriplet<typename Derived::Scalar> top_singular_triplet(
    const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol = kDefaultTol) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("top_singular_triplet: empty matrix");
  require_finite(m, "top_singular_triplet");

  const Matrix<Scalar> a = m;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularTriplet<Scalar> out;
  out.sigma = svd.singularValues()(0);
  out.u = svd.matrixU().col(0);
  out.v = svd.matrixV().col(0);
  const Real residual = (a * out.v - out.sigma * out.u).norm();
  if (!(residual <= tol * (Real(1) + out.sigma)))
    throw ConvergenceError("top_singular_triplet: residual above tolerance");
  return out;
}

template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> a = m;
  return Eigen::JacobiSVD<Matrix<Scalar>>(a).singularValues()(0);
}

/// Sum of singular values (tr|M|).
template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix must be square");
  if (m.size() == 0) return 0;
  require_finite(m, "trace_norm");
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> a = m;
  return Eigen::JacobiSVD<Matrix<Scalar>>(a).singularValues().sum();
}

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero.
template <typename Derived>
Matrix<typename Derived::Scalar> psd_sqrt(const Eigen::MatrixBase<Derived>& m,
                                          typename Derived::RealScalar tol = kDefaultTol) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument("psd_sqrt: matrix must be square and nonempty");
  require_finite(m, "psd_sqrt");
  if (!is_hermitian(m)) throw std::invalid_argument("psd_sqrt: matrix is not Hermitian");

  const Matrix<Scalar> a = m;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(a);
  if (solver.info() != Eigen::Success) throw ConvergenceError("psd_sqrt: eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  if (ev(0) < -tol) throw NotPsdError("psd_sqrt: smallest eigenvalue " + std::to_string(ev(0)) + " below -tol");
  const Vector<Real> roots = ev.cwiseMax(Real(0)).cwiseSqrt();
  Matrix<Scalar> r = solver.eigenvectors() * roots.template cast<Scalar>().asDiagonal() *
                     solver.eigenvectors().adjoint();
  return (r + r.adjoint()) / Real(2);
}

}  // namespace schauder::linalg
