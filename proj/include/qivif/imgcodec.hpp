#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Raised on unreadable/unwritable files or malformed image data.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 8-bit raster held as reals in [0,1]; channels is 1 (grayscale /
/// infrared) or 3 (RGB / visible). Samples are row-major, interleaved.
struct RasterImage {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<double> samples;

  [[nodiscard]] double at(int r, int c, int ch) const {
    return samples[(static_cast<size_t>(r) * width + c) * channels + ch];
  }
  double &at(int r, int c, int ch) {
    return samples[(static_cast<size_t>(r) * width + c) * channels + ch];
  }

  static RasterImage zero(int height, int width, int channels);
};

/// Reads an 8-bit PNG as grayscale (1 channel) or RGB (3 channels).
/// Palette images expand to RGB, sub-8-bit gray expands to 8, 16-bit is
/// narrowed to 8, and alpha is dropped with a warning on stderr.
RasterImage load_png(const std::string &path);

/// Writes an 8-bit grayscale or RGB PNG; samples are clamped to [0,1] and
/// quantized round-half-up.
void save_png(const RasterImage &img, const std::string &path);

/// RGB -> pure quaternion, (x,y,z) = (r,g,b). Requires 3 channels.
QMatrix encode_visible(const RasterImage &img);

/// Grayscale -> pure quaternion with the gray value replicated across the
/// three imaginary components. Requires 1 channel.
QMatrix encode_infrared(const RasterImage &img);

/// Intensity component b(.): per-pixel mean of the three imaginary parts.
/// Returned unclamped so that uniform brightening shifts it linearly;
/// callers clamp where a [0,1] range is required.
Eigen::ArrayXXd intensity(const QMatrix &a);

/// Quaternion -> RGB raster: (r,g,b) = clamp((x,y,z), 0, 1), quantized
/// round-half-up at save time.
RasterImage decode(const QMatrix &a);

/// Quantize one [0,1] sample to 8 bits, round-half-up after clamping.
std::uint8_t quantize8(double v);

}  // namespace qivif
