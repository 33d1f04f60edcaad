#pragma once

#include <Eigen/Dense>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Unsharp-masking mode: plain component-wise summation of the detail
/// layers, or per-pixel adaptive gains built from saliency/intensity.
struct QaumParams {
  enum class Mode { Summation, Adaptive };
  Mode mode = Mode::Summation;
  double g_min = 0.5;
  double g_max = 1.5;

  void validate() const;
};

/// Affine gain map g_min + (g_max - g_min) * minmax(driver), clamped to
/// [g_min, g_max]; monotone non-decreasing in the driving value. A
/// constant driver maps to g_min everywhere.
Eigen::ArrayXXd adaptive_gain_map(const Eigen::ArrayXXd &driver, double g_min,
                                  double g_max);

/// I_v + D_f + D_v (summation) or I_v + L1.*D_f + L2.*D_v (adaptive), with
/// L1 driven by the modulus of D_f and L2 by the intensity of I_v. No
/// range clipping here; that happens at decode time.
QMatrix enhance(const QMatrix &i_v, const QMatrix &d_f, const QMatrix &d_v,
                const QaumParams &params);

}  // namespace qivif
