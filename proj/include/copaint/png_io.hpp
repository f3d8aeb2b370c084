#pragma once

#include <png.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "raster.hpp"

namespace copaint {

namespace detail {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

inline constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

}  // namespace detail

// Decodes a PNG; transparent pixels are composited over white.
inline Raster loadCanvas(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), detail::kPngSignature, 8) != 0)
    throw UnsupportedFormat("input is not a PNG file");
  detail::PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size()))
    throw DecodeError(std::string("png header: ") + png.image.message);
  png.image.format = PNG_FORMAT_RGBA;
  if (png.image.width < 1 || png.image.height < 1) throw DecodeError("empty png");
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, rgba.data(), 0, nullptr))
    throw DecodeError(std::string("png data: ") + png.image.message);

  const int w = static_cast<int>(png.image.width);
  const int h = static_cast<int>(png.image.height);
  std::vector<Rgb> pixels(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const std::uint8_t* p = &rgba[i * 4];
    const unsigned a = p[3];
    auto over = [a](unsigned c) {
      return static_cast<std::uint8_t>((c * a + 255u * (255u - a) + 127u) / 255u);
    };
    pixels[i] = {over(p[0]), over(p[1]), over(p[2])};
  }
  return Raster(w, h, std::move(pixels));
}

inline std::vector<std::uint8_t> encodePng(const Raster& raster) {
  detail::PngImage png;
  png.image.width = static_cast<png_uint_32>(raster.width());
  png.image.height = static_cast<png_uint_32>(raster.height());
  png.image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> rgb;
  rgb.reserve(raster.size() * 3);
  for (const Rgb& c : raster.pixels()) rgb.insert(rgb.end(), {c.r, c.g, c.b});

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, rgb.data(), 0, nullptr))
    throw DecodeError(std::string("png encode: ") + png.image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, rgb.data(), 0, nullptr))
    throw DecodeError(std::string("png encode: ") + png.image.message);
  out.resize(size);
  return out;
}

inline std::vector<std::uint8_t> readFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Raster loadCanvasFile(const std::string& path) { return loadCanvas(readFileBytes(path)); }

}  // namespace copaint
