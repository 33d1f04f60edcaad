#pragma once

#include <Eigen/Dense>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Complex adjoint of A = A1 + A2*j:
///   [[ A1,        A2       ],
///    [ -conj(A2), conj(A1) ]]  in C^{2H x 2W}.
/// The map is an algebra homomorphism, so products, inverses and singular
/// values of quaternion matrices can be computed on the adjoint.
Eigen::MatrixXcd complex_adjoint(const QMatrix &a);

/// Inverse of complex_adjoint, reading the top block row [A1 | A2].
QMatrix from_adjoint_top(const Eigen::MatrixXcd &top);

/// Solve M * X = R for X with M quaternion Hermitian positive definite.
QMatrix solve_hpd_left(const QMatrix &m, const QMatrix &r);

/// Solve X * M = R for X with M quaternion Hermitian positive definite.
QMatrix solve_hpd_right(const QMatrix &m, const QMatrix &r);

}  // namespace qivif
