#pragma once

#include <string>

#include <Eigen/Dense>

#include "qivif/imgcodec.hpp"

namespace qivif {

/// The six fusion-quality scores. Reporting order follows the evaluation
/// table convention: SD, SF, AG, MI, EN, Qabf.
struct MetricReport {
  double mi = 0.0;
  double en = 0.0;
  double sd = 0.0;
  double ag = 0.0;
  double sf = 0.0;
  double qabf = 0.0;
};

/// BT.601 luma on the 0..255 scale; single-channel images pass through.
Eigen::ArrayXXd luma255(const RasterImage &img);

/// Shannon entropy (bits) of the 256-bin histogram of 8-bit luma.
double entropy(const Eigen::ArrayXXd &luma);

/// Mutual information (bits) between two 8-bit luma planes from the joint
/// 256x256 histogram.
double mutual_information(const Eigen::ArrayXXd &luma_a,
                          const Eigen::ArrayXXd &luma_b);

/// All six metrics of the fused image against both sources. The fused and
/// visible images carry 3 channels, the infrared 1; spatial sizes must
/// match. MI is reported as MI(F;vis) + MI(F;ir). AG and SF are computed
/// on [0,1]-scaled luma, SD on the 0..255 scale.
MetricReport compute_metrics(const RasterImage &fused, const RasterImage &vis,
                             const RasterImage &ir);

/// CSV emission in the evaluation-table column order.
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string &id, const MetricReport &r);

}  // namespace qivif
