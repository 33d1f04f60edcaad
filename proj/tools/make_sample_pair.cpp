// Generates the bundled 64x64 low-light visible / infrared test pair.
// Everything is formula-based so the PNGs are bit-reproducible.
//
// Usage: make_sample_pair [out_dir]
//
// The infrared target sits in the 16x16 box rows [24,40) x cols [28,44);
// tests that measure saliency concentration rely on that placement.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "qivif/imgcodec.hpp"

namespace {

constexpr int kSize = 64;
using std::numbers::pi;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

qivif::RasterImage make_visible() {
  qivif::RasterImage img = qivif::RasterImage::zero(kSize, kSize, 3);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      double r = 0.45 + 0.25 * std::sin(2.0 * pi * (3.0 * x) / 64.0 +
                                        0.8 * std::sin(2.0 * pi * y / 32.0));
      double g = 0.40 + 0.22 * std::sin(2.0 * pi * (2.0 * x + y) / 48.0);
      double b = 0.35 + 0.20 * std::sin(2.0 * pi * (3.0 * y - x) / 56.0);

      // High-detail checkered patch in the lower-left quadrant.
      if (x >= 8 && x < 28 && y >= 36 && y < 60) {
        const double check = ((x / 3 + y / 3) % 2 == 0) ? 0.18 : -0.12;
        r += check;
        g += check;
        b += check;
      }

      // Low-light degradation plus a smooth glow blob.
      const double dx = x - 44.0, dy = y - 18.0;
      const double glow = 0.55 * std::exp(-(dx * dx + dy * dy) / (2.0 * 100.0));
      img.at(y, x, 0) = clamp01(0.30 * r + glow);
      img.at(y, x, 1) = clamp01(0.30 * g + glow);
      img.at(y, x, 2) = clamp01(0.30 * b + glow);
    }
  }
  return img;
}

qivif::RasterImage make_infrared() {
  qivif::RasterImage img = qivif::RasterImage::zero(kSize, kSize, 1);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double bg = 0.15 + 0.12 * (y / 63.0) +
                        0.04 * std::sin(2.0 * pi * x / 16.0) *
                            std::sin(2.0 * pi * y / 20.0);
      // Plateau-shaped thermal target centered in the labeled box.
      const double dy = (y - 31.5) / 7.0, dx = (x - 35.5) / 7.0;
      const double rr = dx * dx + dy * dy;
      const double target = 0.72 * std::exp(-rr * rr * rr);
      img.at(y, x, 0) = clamp01(bg + target);
    }
  }
  return img;
}

}  // namespace

int main(int argc, char **argv) {
  const std::filesystem::path out = argc > 1 ? argv[1] : "data";
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) {
    std::cerr << "cannot create " << out << "\n";
    return 1;
  }
  qivif::save_png(make_visible(), (out / "visible_64.png").string());
  qivif::save_png(make_infrared(), (out / "infrared_64.png").string());
  std::cout << "wrote " << (out / "visible_64.png").string() << " and "
            << (out / "infrared_64.png").string() << "\n";
  return 0;
}
