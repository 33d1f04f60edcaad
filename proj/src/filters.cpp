#include "qivif/filters.hpp"

#include <numbers>
#include <stdexcept>

namespace qivif {

namespace {

using Eigen::MatrixXd;

MatrixXd shift_rows(const MatrixXd &a, Index by) {
  // Circular shift: out(r, c) = a((r + by) mod H, c).
  const Index h = a.rows();
  const Index s = ((by % h) + h) % h;
  if (s == 0) return a;
  MatrixXd out(h, a.cols());
  out.topRows(h - s) = a.bottomRows(h - s);
  out.bottomRows(s) = a.topRows(s);
  return out;
}

MatrixXd shift_cols(const MatrixXd &a, Index by) {
  const Index w = a.cols();
  const Index s = ((by % w) + w) % w;
  if (s == 0) return a;
  MatrixXd out(a.rows(), w);
  out.leftCols(w - s) = a.rightCols(w - s);
  out.rightCols(s) = a.leftCols(s);
  return out;
}

}  // namespace

Eigen::MatrixXd apply_filter(const Eigen::MatrixXd &a, FilterKind kind) {
  switch (kind) {
    case FilterKind::Grad1X:
      return shift_cols(a, 1) - a;
    case FilterKind::Grad1Y:
      return shift_rows(a, 1) - a;
    case FilterKind::Laplacian:
      return shift_rows(a, 1) + shift_rows(a, -1) + shift_cols(a, 1) +
             shift_cols(a, -1) - 4.0 * a;
    case FilterKind::Cross:
      return shift_rows(shift_cols(a, 1), 1) - shift_rows(a, 1) -
             shift_cols(a, 1) + a;
  }
  throw std::logic_error("apply_filter: unknown filter kind");
}

QMatrix apply_filter(const QMatrix &a, FilterKind kind) {
  return QMatrix::from_planes(
      apply_filter(a.w(), kind), apply_filter(a.x(), kind),
      apply_filter(a.y(), kind), apply_filter(a.z(), kind));
}

Eigen::ArrayXXcd filter_spectrum(FilterKind kind, Index rows, Index cols) {
  using std::numbers::pi;
  const std::complex<double> im(0.0, 1.0);
  Eigen::ArrayXcd ey(rows), ex(cols);
  for (Index u = 0; u < rows; ++u) {
    ey(u) = std::exp(im * (2.0 * pi * static_cast<double>(u) /
                           static_cast<double>(rows)));
  }
  for (Index v = 0; v < cols; ++v) {
    ex(v) = std::exp(im * (2.0 * pi * static_cast<double>(v) /
                           static_cast<double>(cols)));
  }

  Eigen::ArrayXXcd spec(rows, cols);
  switch (kind) {
    case FilterKind::Grad1X:
      for (Index u = 0; u < rows; ++u)
        for (Index v = 0; v < cols; ++v) spec(u, v) = ex(v) - 1.0;
      return spec;
    case FilterKind::Grad1Y:
      for (Index u = 0; u < rows; ++u)
        for (Index v = 0; v < cols; ++v) spec(u, v) = ey(u) - 1.0;
      return spec;
    case FilterKind::Laplacian:
      for (Index u = 0; u < rows; ++u)
        for (Index v = 0; v < cols; ++v)
          spec(u, v) = ey(u) + std::conj(ey(u)) + ex(v) + std::conj(ex(v)) -
                       4.0;
      return spec;
    case FilterKind::Cross:
      for (Index u = 0; u < rows; ++u)
        for (Index v = 0; v < cols; ++v)
          spec(u, v) = (ey(u) - 1.0) * (ex(v) - 1.0);
      return spec;
  }
  throw std::logic_error("filter_spectrum: unknown filter kind");
}

Eigen::ArrayXXd grad_power_spectrum(Index rows, Index cols) {
  return filter_spectrum(FilterKind::Grad1X, rows, cols).abs2() +
         filter_spectrum(FilterKind::Grad1Y, rows, cols).abs2();
}

Eigen::ArrayXXd laplacian_spectrum(Index rows, Index cols) {
  return filter_spectrum(FilterKind::Laplacian, rows, cols).real();
}

QGradPair gradient(const QMatrix &a) {
  return {apply_filter(a, FilterKind::Grad1X),
          apply_filter(a, FilterKind::Grad1Y)};
}

}  // namespace qivif
