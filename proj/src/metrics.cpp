#include "qivif/metrics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qivif {

namespace {

int bin_of(double luma) {
  const int b = static_cast<int>(std::floor(luma + 0.5));
  return std::min(255, std::max(0, b));
}

Eigen::ArrayXXd histogram256(const Eigen::ArrayXXd &luma) {
  Eigen::ArrayXXd h = Eigen::ArrayXXd::Zero(256, 1);
  for (Index r = 0; r < luma.rows(); ++r) {
    for (Index c = 0; c < luma.cols(); ++c) {
      h(bin_of(luma(r, c)), 0) += 1.0;
    }
  }
  return h / static_cast<double>(luma.size());
}

// Sobel responses with reflective borders.
void sobel(const Eigen::ArrayXXd &img, Eigen::ArrayXXd &gx,
           Eigen::ArrayXXd &gy) {
  const Index h = img.rows(), w = img.cols();
  gx.resize(h, w);
  gy.resize(h, w);
  auto ref = [&](Index r, Index c) {
    r = r < 0 ? -r : (r >= h ? 2 * h - 2 - r : r);
    c = c < 0 ? -c : (c >= w ? 2 * w - 2 - c : c);
    return img(r, c);
  };
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) {
      gx(r, c) = (ref(r - 1, c + 1) + 2.0 * ref(r, c + 1) + ref(r + 1, c + 1)) -
                 (ref(r - 1, c - 1) + 2.0 * ref(r, c - 1) + ref(r + 1, c - 1));
      gy(r, c) = (ref(r + 1, c - 1) + 2.0 * ref(r + 1, c) + ref(r + 1, c + 1)) -
                 (ref(r - 1, c - 1) + 2.0 * ref(r - 1, c) + ref(r - 1, c + 1));
    }
  }
}

// Edge orientation modulo pi; edges have no sign.
double orientation(double gx, double gy) {
  if (gx == 0.0 && gy == 0.0) return 0.0;
  double a = std::atan2(gy, gx);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

double orientation_distance(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, std::numbers::pi - d);  // folded, in [0, pi/2]
}

// Xydeas-Petrovic edge preservation of source A in fused F, with the
// standard sigmoid constants and the per-pixel score normalized so perfect
// preservation scores exactly 1.
struct EdgeMaps {
  Eigen::ArrayXXd g;      // strength
  Eigen::ArrayXXd alpha;  // orientation
};

EdgeMaps edge_maps(const Eigen::ArrayXXd &img) {
  Eigen::ArrayXXd gx, gy;
  sobel(img, gx, gy);
  EdgeMaps m;
  m.g = (gx.square() + gy.square()).sqrt();
  m.alpha.resize(img.rows(), img.cols());
  for (Index r = 0; r < img.rows(); ++r) {
    for (Index c = 0; c < img.cols(); ++c) {
      m.alpha(r, c) = orientation(gx(r, c), gy(r, c));
    }
  }
  return m;
}

constexpr double kGammaG = 0.9994, kKappaG = -15.0, kSigmaG = 0.5;
constexpr double kGammaA = 0.9879, kKappaA = -22.0, kSigmaA = 0.8;

double sigmoid_g(double v) {
  return kGammaG / (1.0 + std::exp(kKappaG * (v - kSigmaG)));
}
double sigmoid_a(double v) {
  return kGammaA / (1.0 + std::exp(kKappaA * (v - kSigmaA)));
}

double qabf_score(const Eigen::ArrayXXd &fused, const Eigen::ArrayXXd &a,
                  const Eigen::ArrayXXd &b) {
  const EdgeMaps mf = edge_maps(fused);
  const EdgeMaps ma = edge_maps(a);
  const EdgeMaps mb = edge_maps(b);
  const double qmax = sigmoid_g(1.0) * sigmoid_a(1.0);

  auto preservation = [&](const EdgeMaps &src, Index r, Index c) {
    const double gs = src.g(r, c), gf = mf.g(r, c);
    double rel;
    if (gs == 0.0 && gf == 0.0) {
      rel = 0.0;
    } else if (gs > gf) {
      rel = gf / gs;
    } else {
      rel = gs / gf;
    }
    const double dist = orientation_distance(src.alpha(r, c), mf.alpha(r, c));
    const double ang = 1.0 - dist / (std::numbers::pi / 2.0);
    return sigmoid_g(rel) * sigmoid_a(ang) / qmax;
  };

  double num = 0.0, den = 0.0;
  for (Index r = 0; r < fused.rows(); ++r) {
    for (Index c = 0; c < fused.cols(); ++c) {
      const double wa = ma.g(r, c), wb = mb.g(r, c);
      num += preservation(ma, r, c) * wa + preservation(mb, r, c) * wb;
      den += wa + wb;
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

Eigen::ArrayXXd luma255(const RasterImage &img) {
  Eigen::ArrayXXd l(img.height, img.width);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      if (img.channels == 1) {
        l(r, c) = img.at(r, c, 0) * 255.0;
      } else {
        l(r, c) = (0.299 * img.at(r, c, 0) + 0.587 * img.at(r, c, 1) +
                   0.114 * img.at(r, c, 2)) *
                  255.0;
      }
    }
  }
  return l;
}

double entropy(const Eigen::ArrayXXd &luma) {
  const Eigen::ArrayXXd p = histogram256(luma);
  double en = 0.0;
  for (Index i = 0; i < 256; ++i) {
    if (p(i, 0) > 0.0) en -= p(i, 0) * std::log2(p(i, 0));
  }
  return en;
}

double mutual_information(const Eigen::ArrayXXd &luma_a,
                          const Eigen::ArrayXXd &luma_b) {
  if (luma_a.rows() != luma_b.rows() || luma_a.cols() != luma_b.cols()) {
    throw std::invalid_argument("mutual_information: size mismatch");
  }
  std::vector<double> joint(256 * 256, 0.0);
  std::array<double, 256> pa{}, pb{};
  const double total = static_cast<double>(luma_a.size());
  for (Index r = 0; r < luma_a.rows(); ++r) {
    for (Index c = 0; c < luma_a.cols(); ++c) {
      const int i = bin_of(luma_a(r, c));
      const int j = bin_of(luma_b(r, c));
      joint[static_cast<size_t>(i) * 256 + j] += 1.0;
      pa[i] += 1.0;
      pb[j] += 1.0;
    }
  }
  double mi = 0.0;
  for (int i = 0; i < 256; ++i) {
    if (pa[i] == 0.0) continue;
    for (int j = 0; j < 256; ++j) {
      const double pij = joint[static_cast<size_t>(i) * 256 + j];
      if (pij == 0.0 || pb[j] == 0.0) continue;
      mi += (pij / total) * std::log2(pij * total / (pa[i] * pb[j]));
    }
  }
  return std::max(mi, 0.0);
}

MetricReport compute_metrics(const RasterImage &fused, const RasterImage &vis,
                             const RasterImage &ir) {
  if (fused.height != vis.height || fused.width != vis.width ||
      fused.height != ir.height || fused.width != ir.width) {
    throw std::invalid_argument("compute_metrics: spatial size mismatch");
  }
  const Eigen::ArrayXXd lf = luma255(fused);
  const Eigen::ArrayXXd lv = luma255(vis);
  const Eigen::ArrayXXd li = luma255(ir);

  MetricReport rep;
  rep.en = entropy(lf);
  rep.mi = mutual_information(lf, lv) + mutual_information(lf, li);

  const double mean = lf.mean();
  rep.sd = std::sqrt((lf - mean).square().mean());

  // Gradient-based scores on the [0,1] scale.
  const Eigen::ArrayXXd f01 = lf / 255.0;
  const Index h = f01.rows(), w = f01.cols();
  if (h > 1 && w > 1) {
    double acc = 0.0;
    for (Index r = 0; r + 1 < h; ++r) {
      for (Index c = 0; c + 1 < w; ++c) {
        const double dx = f01(r, c + 1) - f01(r, c);
        const double dy = f01(r + 1, c) - f01(r, c);
        acc += std::sqrt((dx * dx + dy * dy) / 2.0);
      }
    }
    rep.ag = acc / static_cast<double>((h - 1) * (w - 1));

    double rf = 0.0, cf = 0.0;
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c + 1 < w; ++c) {
        const double d = f01(r, c + 1) - f01(r, c);
        rf += d * d;
      }
    for (Index r = 0; r + 1 < h; ++r)
      for (Index c = 0; c < w; ++c) {
        const double d = f01(r + 1, c) - f01(r, c);
        cf += d * d;
      }
    rf /= static_cast<double>(h * (w - 1));
    cf /= static_cast<double>((h - 1) * w);
    rep.sf = std::sqrt(rf + cf);
  }

  rep.qabf = qabf_score(f01, lv / 255.0, li / 255.0);
  return rep;
}

std::string metrics_csv_header() { return "id,sd,sf,ag,mi,en,qabf"; }

std::string metrics_csv_row(const std::string &id, const MetricReport &r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << id << ',' << r.sd << ',' << r.sf << ',' << r.ag << ',' << r.mi << ','
     << r.en << ',' << r.qabf;
  return os.str();
}

}  // namespace qivif
