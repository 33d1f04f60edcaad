#pragma once

#include <Eigen/Dense>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Discrete derivative stencils, all applied as circular (periodic)
/// convolutions. x runs along columns, y along rows.
///   Grad1X:    A(r, c+1) - A(r, c)
///   Grad1Y:    A(r+1, c) - A(r, c)
///   Laplacian: 5-point second difference
///   Cross:     mixed second difference d^2/(dx dy)
enum class FilterKind { Grad1X, Grad1Y, Laplacian, Cross };

QMatrix apply_filter(const QMatrix &a, FilterKind kind);
Eigen::MatrixXd apply_filter(const Eigen::MatrixXd &a, FilterKind kind);

/// DFT eigenvalues of the stencil under the same convention as qfft, i.e.
/// applying the filter equals pointwise multiplication by this spectrum in
/// the transform domain.
Eigen::ArrayXXcd filter_spectrum(FilterKind kind, Index rows, Index cols);

/// |F(Grad1X)|^2 + |F(Grad1Y)|^2, the spectrum of grad^H grad (equals the
/// negated 5-point Laplacian spectrum).
Eigen::ArrayXXd grad_power_spectrum(Index rows, Index cols);

/// Real spectrum of the 5-point Laplacian.
Eigen::ArrayXXd laplacian_spectrum(Index rows, Index cols);

/// Forward-difference gradient pair (x then y component).
struct QGradPair {
  QMatrix gx;
  QMatrix gy;

  [[nodiscard]] double norm_fro() const {
    return std::sqrt(gx.norm_fro() * gx.norm_fro() +
                     gy.norm_fro() * gy.norm_fro());
  }
};

QGradPair gradient(const QMatrix &a);

}  // namespace qivif
