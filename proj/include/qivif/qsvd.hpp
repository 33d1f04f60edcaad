#pragma once

#include <Eigen/Dense>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Thin quaternion SVD A = U * diag(S) * V^H with K = min(H, W) real
/// non-negative singular values in non-increasing order.
struct QsvdResult {
  QMatrix u;          // H x K
  Eigen::VectorXd s;  // K
  QMatrix v;          // W x K
};

/// Computed through the complex adjoint representation: the adjoint's
/// singular values occur in duplicated pairs, one of each pair is kept and
/// the quaternion singular vectors are read back from the paired complex
/// ones. Throws std::invalid_argument on non-finite input and
/// std::runtime_error if the duplicated pairs fail to match (which can only
/// come from a broken adjoint construction).
QsvdResult qsvd(const QMatrix &a);

enum class NormKind { L1, Fro, Nuclear };

/// L1 = sum of entry moduli, Fro = sqrt of sum of squared moduli,
/// Nuclear = sum of quaternion singular values.
double norm(const QMatrix &a, NormKind kind);

}  // namespace qivif
