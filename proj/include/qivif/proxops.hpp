#pragma once

#include <Eigen/Dense>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Parameters of the ||.||_{w,Sp,p1=n} shrinkage: the leading n singular
/// values pass through untouched, the tail is shrunk by weighted
/// Schatten-p generalized soft thresholding.
struct ShrinkParams {
  double lambda = 0.0;       // overall threshold scale, >= 0
  double p = 1.0;            // Schatten exponent, in (0, 1]
  Index n = 0;               // leading singular values preserved
  Eigen::VectorXd weights;   // per-singular-value weights; empty = automatic
                             // 1/(sigma_k + 1e-4) from the input spectrum
};

/// Scalar generalized soft-thresholding for min_x 0.5(sigma_y - x)^2 +
/// lambda*w*x^p. Returns 0 at or below the threshold
/// tau = (2*lambda*w*(1-p))^(1/(2-p)) + lambda*w*p*(2*lambda*w*(1-p))^((p-1)/(2-p)),
/// otherwise the fixed point of x = sigma_y - lambda*w*p*x^(p-1).
/// p = 1 reduces to plain soft thresholding; p outside (0,1] throws.
double gst_scalar(double sigma_y, double lambda, double w, double p);

/// Partial-sum + weighted Schatten-p spectral shrinkage:
/// QSVD of y, keep the top n singular values, gst-shrink the rest,
/// reassemble U * diag(s') * V^H. n larger than min(H,W) is clamped.
QMatrix pssv_wsp_shrink(const QMatrix &y, const ShrinkParams &params);

/// Column-wise quaternion soft thresholding: each column scales by
/// max(||col||_1 - tau, 0) / ||col||_1; zero columns stay zero.
QMatrix soft_threshold_columns(const QMatrix &y, double tau);

}  // namespace qivif
