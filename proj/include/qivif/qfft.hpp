#pragma once

#include <Eigen/Dense>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Unnormalized 2-D complex DFT of a plane; the inverse carries the
/// 1/(rows*cols) factor so dft2(dft2(p), true) == p.
Eigen::MatrixXcd dft2(const Eigen::MatrixXcd &plane, bool inverse);

/// Quaternion FFT under periodic boundaries, realized on the
/// Cayley-Dickson pair: F(A1 + A2*j) = DFT(A1) + DFT(A2)*j. For the
/// real-coefficient filters used in this pipeline this coincides with
/// transforming the four component planes independently.
QMatrix qfft(const QMatrix &a, bool inverse = false);

}  // namespace qivif
