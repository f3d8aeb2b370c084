#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace copaint {

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

// "#rrggbb"
inline std::string toHex(Rgb c) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s = "#";
  for (std::uint8_t v : {c.r, c.g, c.b}) {
    s += digits[v >> 4];
    s += digits[v & 15];
  }
  return s;
}

inline Rgb fromHex(const std::string& s) {
  if (s.size() != 7 || s[0] != '#') throw InvalidArgument("bad color '" + s + "'");
  auto nib = [&](char ch) -> int {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw InvalidArgument("bad color '" + s + "'");
  };
  auto byte = [&](int i) { return static_cast<std::uint8_t>(nib(s[i]) * 16 + nib(s[i + 1])); };
  return {byte(1), byte(3), byte(5)};
}

// Row-major 8-bit RGB image.
class Raster {
 public:
  Raster() : Raster(1, 1) {}
  Raster(int width, int height, Rgb fill = kWhite) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw InvalidArgument("raster dimensions must be >= 1");
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
  }
  Raster(int width, int height, std::vector<Rgb> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width < 1 || height < 1) throw InvalidArgument("raster dimensions must be >= 1");
    if (pixels_.size() != static_cast<std::size_t>(width) * height)
      throw InvalidArgument("pixel count does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  Rgb& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  const Rgb& at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  const std::vector<Rgb>& pixels() const { return pixels_; }
  std::vector<Rgb>& pixels() { return pixels_; }

  Raster crop(int x0, int y0, int w, int h) const {
    if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > width_ || y0 + h > height_)
      throw InvalidArgument("crop rectangle outside raster");
    Raster out(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(x, y) = at(x0 + x, y0 + y);
    return out;
  }

  void blit(const Raster& src, int x0, int y0) {
    for (int y = 0; y < src.height(); ++y)
      for (int x = 0; x < src.width(); ++x)
        if (contains(x0 + x, y0 + y)) at(x0 + x, y0 + y) = src.at(x, y);
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

}  // namespace copaint
