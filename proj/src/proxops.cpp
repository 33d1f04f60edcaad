#include "qivif/proxops.hpp"

#include <cmath>
#include <stdexcept>

#include "qivif/qsvd.hpp"

namespace qivif {

double gst_scalar(double sigma_y, double lambda, double w, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("gst_scalar: p must lie in (0, 1]");
  }
  if (sigma_y < 0.0 || lambda * w < 0.0) {
    throw std::invalid_argument("gst_scalar: negative sigma_y or lambda*w");
  }
  const double lw = lambda * w;
  if (lw == 0.0) return sigma_y;
  if (p == 1.0) return std::max(sigma_y - lw, 0.0);

  const double base = 2.0 * lw * (1.0 - p);
  const double tau = std::pow(base, 1.0 / (2.0 - p)) +
                     lw * p * std::pow(base, (p - 1.0) / (2.0 - p));
  if (sigma_y <= tau) return 0.0;

  double x = sigma_y;
  for (int it = 0; it < 10; ++it) {
    const double next = sigma_y - lw * p * std::pow(x, p - 1.0);
    if (next <= 0.0) return 0.0;  // numerical guard; cannot fire above tau
    const double delta = std::abs(next - x);
    x = next;
    if (delta < 1e-8) break;
  }
  return x;
}

QMatrix pssv_wsp_shrink(const QMatrix &y, const ShrinkParams &params) {
  if (params.lambda < 0.0) {
    throw std::invalid_argument("pssv_wsp_shrink: negative lambda");
  }
  QsvdResult svd = qsvd(y);
  const Index k = svd.s.size();
  const Index n = std::min<Index>(std::max<Index>(params.n, 0), k);

  Eigen::VectorXd weights = params.weights;
  if (weights.size() == 0) {
    weights = (svd.s.array() + 1e-4).inverse();
  } else if (weights.size() != k) {
    throw std::invalid_argument("pssv_wsp_shrink: weight vector length");
  }

  Eigen::VectorXd shrunk = svd.s;
  for (Index i = n; i < k; ++i) {
    shrunk(i) = gst_scalar(svd.s(i), params.lambda, weights(i), params.p);
  }

  // U * diag(s') * V^H with real s': scale U's columns, multiply by V^H.
  QMatrix us = svd.u;
  for (Index i = 0; i < k; ++i) {
    us.w().col(i) *= shrunk(i);
    us.x().col(i) *= shrunk(i);
    us.y().col(i) *= shrunk(i);
    us.z().col(i) *= shrunk(i);
  }
  return us * svd.v.conj_transpose();
}

QMatrix soft_threshold_columns(const QMatrix &y, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("soft_threshold_columns: negative tau");
  }
  const Eigen::ArrayXXd mod = y.modulus();
  QMatrix out = y;
  for (Index c = 0; c < y.cols(); ++c) {
    const double l1 = mod.col(c).sum();
    const double scale = (l1 > tau) ? (l1 - tau) / l1 : 0.0;
    out.w().col(c) *= scale;
    out.x().col(c) *= scale;
    out.y().col(c) *= scale;
    out.z().col(c) *= scale;
  }
  return out;
}

}  // namespace qivif
