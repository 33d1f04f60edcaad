#include "qivif/imgcodec.hpp"

#include <png.h>

#include <cstdio>
#include <iostream>
#include <memory>
#include <stdexcept>

namespace qivif {

RasterImage RasterImage::zero(int height, int width, int channels) {
  RasterImage img;
  img.height = height;
  img.width = width;
  img.channels = channels;
  img.samples.assign(static_cast<size_t>(height) * width * channels, 0.0);
  return img;
}

namespace {

struct FileCloser {
  void operator()(std::FILE *f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

RasterImage load_png(const std::string &path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open PNG for reading: " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng init failed");
  }
  std::vector<png_bytep> row_ptrs;
  std::vector<png_byte> data;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("malformed PNG: " + path);
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  const bool has_alpha = (color_type & PNG_COLOR_MASK_ALPHA) != 0 ||
                         png_get_valid(png, info, PNG_INFO_tRNS);
  if (has_alpha) {
    std::cerr << "warning: dropping alpha channel of " << path << "\n";
    png_set_strip_alpha(png);
  }
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported PNG channel count in " + path);
  }

  const size_t stride = png_get_rowbytes(png, info);
  data.resize(stride * height);
  row_ptrs.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = data.data() + r * stride;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RasterImage img = RasterImage::zero(static_cast<int>(height),
                                      static_cast<int>(width), channels);
  for (png_uint_32 r = 0; r < height; ++r) {
    const png_byte *row = data.data() + r * stride;
    for (png_uint_32 c = 0; c < width * static_cast<png_uint_32>(channels); ++c) {
      img.samples[static_cast<size_t>(r) * width * channels + c] =
          row[c] / 255.0;
    }
  }
  return img;
}

std::uint8_t quantize8(double v) {
  v = std::min(1.0, std::max(0.0, v));
  return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
}

void save_png(const RasterImage &img, const std::string &path) {
  if (img.channels != 1 && img.channels != 3) {
    throw IoError("save_png: channel count must be 1 or 3");
  }
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot open PNG for writing: " + path);

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng init failed");
  }
  std::vector<png_byte> data;
  std::vector<png_bytep> row_ptrs;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG write failed: " + path);
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const size_t stride = static_cast<size_t>(img.width) * img.channels;
  data.resize(stride * img.height);
  row_ptrs.resize(img.height);
  for (int r = 0; r < img.height; ++r) {
    row_ptrs[r] = data.data() + r * stride;
    for (size_t c = 0; c < stride; ++c) {
      row_ptrs[r][c] = quantize8(img.samples[r * stride + c]);
    }
  }
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

QMatrix encode_visible(const RasterImage &img) {
  if (img.channels != 3) {
    throw std::invalid_argument("encode_visible: expected 3 channels");
  }
  QMatrix q(img.height, img.width);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      q.x()(r, c) = img.at(r, c, 0);
      q.y()(r, c) = img.at(r, c, 1);
      q.z()(r, c) = img.at(r, c, 2);
    }
  }
  return q;
}

QMatrix encode_infrared(const RasterImage &img) {
  if (img.channels != 1) {
    throw std::invalid_argument("encode_infrared: expected 1 channel");
  }
  QMatrix q(img.height, img.width);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const double g = img.at(r, c, 0);
      q.x()(r, c) = g;
      q.y()(r, c) = g;
      q.z()(r, c) = g;
    }
  }
  return q;
}

Eigen::ArrayXXd intensity(const QMatrix &a) {
  return (a.x().array() + a.y().array() + a.z().array()) / 3.0;
}

RasterImage decode(const QMatrix &a) {
  RasterImage img = RasterImage::zero(static_cast<int>(a.rows()),
                                      static_cast<int>(a.cols()), 3);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      img.at(r, c, 0) = std::min(1.0, std::max(0.0, a.x()(r, c)));
      img.at(r, c, 1) = std::min(1.0, std::max(0.0, a.y()(r, c)));
      img.at(r, c, 2) = std::min(1.0, std::max(0.0, a.z()(r, c)));
    }
  }
  return img;
}

}  // namespace qivif
