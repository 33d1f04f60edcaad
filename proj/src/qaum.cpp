#include "qivif/qaum.hpp"

#include <stdexcept>

#include "qivif/imgcodec.hpp"

namespace qivif {

void QaumParams::validate() const {
  if (!(0.0 <= g_min && g_min <= g_max)) {
    throw std::invalid_argument("QaumParams: need 0 <= g_min <= g_max");
  }
}

Eigen::ArrayXXd adaptive_gain_map(const Eigen::ArrayXXd &driver, double g_min,
                                  double g_max) {
  const double lo = driver.minCoeff(), hi = driver.maxCoeff();
  const double range = hi - lo;
  Eigen::ArrayXXd gain;
  if (range < 1e-12) {
    gain = Eigen::ArrayXXd::Constant(driver.rows(), driver.cols(), g_min);
  } else {
    gain = g_min + (g_max - g_min) * (driver - lo) / range;
  }
  return gain.cwiseMax(g_min).cwiseMin(g_max);
}

QMatrix enhance(const QMatrix &i_v, const QMatrix &d_f, const QMatrix &d_v,
                const QaumParams &params) {
  params.validate();
  if (d_f.rows() != i_v.rows() || d_f.cols() != i_v.cols() ||
      d_v.rows() != i_v.rows() || d_v.cols() != i_v.cols()) {
    throw std::invalid_argument("enhance: shape mismatch");
  }
  if (params.mode == QaumParams::Mode::Summation) {
    return i_v + d_f + d_v;
  }
  const Eigen::ArrayXXd l1 =
      adaptive_gain_map(d_f.modulus(), params.g_min, params.g_max);
  const Eigen::ArrayXXd l2 =
      adaptive_gain_map(intensity(i_v), params.g_min, params.g_max);
  return i_v + d_f.scaled(l1) + d_v.scaled(l2);
}

}  // namespace qivif
