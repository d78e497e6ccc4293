#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace schauder {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Inner product linear in the first argument: <a, b> = b* a.
inline Complex inner(const CVector& a, const CVector& b) { return b.dot(a); }

}  // namespace schauder
