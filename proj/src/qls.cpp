#include "qivif/qls.hpp"

#include <iostream>
#include <stdexcept>

#include "qivif/imgcodec.hpp"
#include "qivif/proxops.hpp"
#include "qivif/qfft.hpp"

namespace qivif {

namespace {
constexpr double kSpectralEps = 1e-8;

// Clamp intensity(I) into [0, hi] per pixel by uniform rescale of the
// imaginary triple; hi comes from intensity(L).
void project_intensity(QMatrix &i, const Eigen::ArrayXXd &hi) {
  const Eigen::ArrayXXd b = intensity(i);
  for (Index r = 0; r < i.rows(); ++r) {
    for (Index c = 0; c < i.cols(); ++c) {
      const double v = b(r, c);
      const double target = std::min(std::max(v, 0.0), std::max(hi(r, c), 0.0));
      if (v == target) continue;
      const double scale = (v != 0.0) ? target / v : 0.0;
      i.x()(r, c) *= scale;
      i.y()(r, c) *= scale;
      i.z()(r, c) *= scale;
    }
  }
}

double max_modulus_of_diff(const QMatrix &a, const QMatrix &b) {
  return (a - b).max_modulus();
}
}  // namespace

void QlsParams::validate() const {
  if (lambda <= 0.0 || mu2_init <= 0.0 || mu2_growth <= 0.0 || mu2_cap <= 0.0 ||
      tol <= 0.0 || max_iter < 1 || tau_rel < 0.0) {
    throw std::invalid_argument("QlsParams: values out of range");
  }
}

QMatrix hard_shrink(const QMatrix &x, double tau) {
  if (tau < 0.0) throw std::invalid_argument("hard_shrink: negative tau");
  const Eigen::ArrayXXd keep =
      (x.modulus() > tau).cast<double>();
  return x.scaled(keep);
}

QMatrix update_lighting_layer(const QMatrix &l, const QGradPair &g,
                              double lambda, double mu) {
  if (g.gx.rows() != l.rows() || g.gx.cols() != l.cols() ||
      g.gy.rows() != l.rows() || g.gy.cols() != l.cols()) {
    throw std::invalid_argument("update_lighting_layer: shape mismatch");
  }
  const Index h = l.rows(), w = l.cols();

  const Eigen::ArrayXXcd dx = filter_spectrum(FilterKind::Grad1X, h, w);
  const Eigen::ArrayXXcd dy = filter_spectrum(FilterKind::Grad1Y, h, w);
  const Eigen::ArrayXXd lap2 = laplacian_spectrum(h, w).square();
  const Eigen::ArrayXXd denom =
      mu * (dx.abs2() + dy.abs2()) + 2.0 * lambda * lap2 + kSpectralEps;

  Eigen::MatrixXcd l1, l2, gx1, gx2, gy1, gy2;
  l.to_complex_pair(l1, l2);
  g.gx.to_complex_pair(gx1, gx2);
  g.gy.to_complex_pair(gy1, gy2);

  auto solve_plane = [&](const Eigen::MatrixXcd &lc, const Eigen::MatrixXcd &gxc,
                         const Eigen::MatrixXcd &gyc) {
    const Eigen::MatrixXcd lf = dft2(lc, false);
    const Eigen::MatrixXcd gxf = dft2(gxc, false);
    const Eigen::MatrixXcd gyf = dft2(gyc, false);
    Eigen::ArrayXXcd num = 2.0 * lambda * lap2 * lf.array() +
                           mu * (dx.conjugate() * gxf.array() +
                                 dy.conjugate() * gyf.array());
    Eigen::ArrayXXcd out = num / denom;
    out(0, 0) = lf(0, 0);  // DC tie-break: keep the mean of L
    return dft2(out.matrix(), true);
  };

  QMatrix i = QMatrix::from_complex_pair(solve_plane(l1, gx1, gy1),
                                         solve_plane(l2, gx2, gy2));
  project_intensity(i, intensity(l));
  return i;
}

namespace {

// Intensity affine rescale so min -> 0 and max -> 1, applied as a per-pixel
// scalar on the imaginary triple. Degenerate (constant) intensity is left
// untouched.
void normalize_intensity(QMatrix &i) {
  const Eigen::ArrayXXd b = intensity(i);
  const double lo = b.minCoeff(), hi = b.maxCoeff();
  const double range = hi - lo;
  if (range < 1e-12) return;
  for (Index r = 0; r < i.rows(); ++r) {
    for (Index c = 0; c < i.cols(); ++c) {
      const double v = b(r, c);
      const double target = (v - lo) / range;
      const double scale = (v != 0.0) ? target / v : 0.0;
      i.x()(r, c) *= scale;
      i.y()(r, c) *= scale;
      i.z()(r, c) *= scale;
      if (v == 0.0 && target != 0.0) {
        // v = 0 forces lo <= 0 and target = -lo/range <= 0 = target; cannot
        // happen after projection keeps intensity >= 0.
        i.x()(r, c) = i.y()(r, c) = i.z()(r, c) = target;
      }
    }
  }
}

}  // namespace

QlsResult run_qls(const QMatrix &l, const QlsParams &params) {
  params.validate();
  const Index h = l.rows(), w = l.cols();

  const QGradPair grad_l = gradient(l);
  const double tau =
      params.tau >= 0.0
          ? params.tau
          : params.tau_rel *
                std::max(grad_l.gx.max_modulus(), grad_l.gy.max_modulus());

  QMatrix i = l;
  QGradPair g{QMatrix(h, w), QMatrix(h, w)};
  QGradPair y5{QMatrix(h, w), QMatrix(h, w)};
  double mu2 = params.mu2_init;

  QlsResult res;
  res.converged = false;

  const QMatrix lap_l = apply_filter(l, FilterKind::Laplacian);

  for (int it = 0; it < params.max_iter; ++it) {
    const QMatrix i_prev = i;

    // I-step with the multiplier folded into the gradient target.
    QGradPair g_aug{g.gx + y5.gx * (1.0 / mu2), g.gy + y5.gy * (1.0 / mu2)};
    i = update_lighting_layer(l, g_aug, params.lambda, mu2);

    // G-step: Lemma-4 prox of (1/mu2)||.||_1 at H(grad I) - Y5/mu2.
    const QGradPair grad_i = gradient(i);
    const QGradPair hg{hard_shrink(grad_i.gx, tau), hard_shrink(grad_i.gy, tau)};
    g.gx = soft_threshold_columns(hg.gx - y5.gx * (1.0 / mu2), 1.0 / mu2);
    g.gy = soft_threshold_columns(hg.gy - y5.gy * (1.0 / mu2), 1.0 / mu2);

    // Multipliers and penalty schedule.
    const QMatrix rx = g.gx - hg.gx;
    const QMatrix ry = g.gy - hg.gy;
    y5.gx += rx * mu2;
    y5.gy += ry * mu2;

    QlsIterStats st;
    st.iter = it;
    st.mu2 = mu2;
    st.feasibility =
        std::sqrt(rx.norm_fro() * rx.norm_fro() + ry.norm_fro() * ry.norm_fro());
    const QMatrix lap_diff = apply_filter(i, FilterKind::Laplacian) - lap_l;
    st.objective = hg.gx.norm_l1() + hg.gy.norm_l1() +
                   params.lambda * lap_diff.norm_fro() * lap_diff.norm_fro() +
                   y5.gx.dot(rx) + y5.gy.dot(ry) +
                   0.5 * mu2 *
                       (rx.norm_fro() * rx.norm_fro() +
                        ry.norm_fro() * ry.norm_fro());
    const double scale = std::max(i.max_modulus(), 1e-12);
    st.rel_change = max_modulus_of_diff(i, i_prev) / scale;
    res.trace.push_back(st);
    res.iterations = it + 1;

    mu2 = std::min(params.mu2_cap, mu2 * params.mu2_growth);

    if (st.rel_change < params.tol) {
      res.converged = true;
      break;
    }
  }

  if (!res.converged) {
    std::cerr << "warning: QLS stopped at max_iter=" << params.max_iter
              << " with rel_change="
              << (res.trace.empty() ? 0.0 : res.trace.back().rel_change)
              << "\n";
  }

  res.bright = l - i;
  normalize_intensity(i);
  res.lighting = i;
  res.glow = g;
  return res;
}

}  // namespace qivif
