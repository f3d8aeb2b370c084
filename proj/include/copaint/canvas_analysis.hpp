#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

#include "raster.hpp"

namespace copaint {

enum class HueBin { red, orange, yellow, green, blue, purple, white, black, gray };

inline constexpr std::size_t kHueBinCount = 9;
inline constexpr std::array<HueBin, kHueBinCount> kHueBins{
    HueBin::red,   HueBin::orange, HueBin::yellow, HueBin::green, HueBin::blue,
    HueBin::purple, HueBin::white, HueBin::black,  HueBin::gray};

inline std::string_view toString(HueBin b) {
  static constexpr std::array<std::string_view, kHueBinCount> names{
      "red", "orange", "yellow", "green", "blue", "purple", "white", "black", "gray"};
  return names[static_cast<std::size_t>(b)];
}

struct HueAreas {
  std::array<double, kHueBinCount> fractions{};
  double meanValue = 0.0;

  double operator[](HueBin b) const { return fractions[static_cast<std::size_t>(b)]; }
  double& operator[](HueBin b) { return fractions[static_cast<std::size_t>(b)]; }
  friend bool operator==(const HueAreas&, const HueAreas&) = default;
};

enum class Orientation { horizontal, vertical, diagonal };

inline std::string_view toString(Orientation o) {
  switch (o) {
    case Orientation::horizontal: return "horizontal";
    case Orientation::vertical: return "vertical";
    case Orientation::diagonal: return "diagonal";
  }
  return "horizontal";
}

struct DetectedLine {
  double rho = 0.0;       // pixels
  int thetaDeg = 0;       // normal angle, [0, 180)
  int votes = 0;
  Orientation orientation = Orientation::horizontal;
};

struct LineStats {
  int horizontal = 0;
  int vertical = 0;
  int diagonal = 0;
  double diagonalFraction = 0.0;
  std::vector<DetectedLine> lines;

  int total() const { return horizontal + vertical + diagonal; }
};

struct Hsv {
  double hue = 0.0;  // degrees [0, 360)
  double saturation = 0.0;
  double value = 0.0;
};

inline Hsv toHsv(Rgb c) {
  const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out;
  out.value = mx;
  out.saturation = mx > 0.0 ? delta / mx : 0.0;
  if (delta > 0.0) {
    double h;
    if (mx == r)
      h = 60.0 * std::fmod((g - b) / delta, 6.0);
    else if (mx == g)
      h = 60.0 * ((b - r) / delta + 2.0);
    else
      h = 60.0 * ((r - g) / delta + 4.0);
    if (h < 0.0) h += 360.0;
    out.hue = h;
  }
  return out;
}

// Achromatic classes take precedence over hue.
inline HueBin classifyPixel(Rgb c) {
  const Hsv hsv = toHsv(c);
  if (hsv.value < 0.15) return HueBin::black;
  if (hsv.saturation < 0.20) return hsv.value > 0.85 ? HueBin::white : HueBin::gray;
  const double h = hsv.hue;
  if (h >= 345.0 || h < 15.0) return HueBin::red;
  if (h < 45.0) return HueBin::orange;
  if (h < 75.0) return HueBin::yellow;
  if (h < 165.0) return HueBin::green;
  if (h < 255.0) return HueBin::blue;
  return HueBin::purple;
}

inline HueAreas hueHistogram(const Raster& raster) {
  std::array<std::size_t, kHueBinCount> counts{};
  double valueSum = 0.0;
  for (const Rgb& c : raster.pixels()) {
    ++counts[static_cast<std::size_t>(classifyPixel(c))];
    valueSum += std::max({c.r, c.g, c.b}) / 255.0;
  }
  const double total = static_cast<double>(raster.size());
  HueAreas out;
  for (std::size_t i = 0; i < kHueBinCount; ++i) out.fractions[i] = counts[i] / total;
  out.meanValue = valueSum / total;
  return out;
}

struct HoughParams {
  double edgeThreshold = 0.25;   // of the maximum Sobel magnitude
  double peakFraction = 0.3;     // of max(width, height)
  int suppressionRadius = 2;     // 5x5 neighborhood
  int classTolerance = 15;       // degrees
};

// Direction of a line whose Hough normal is at thetaDeg.
inline Orientation classifyNormalAngle(double thetaDeg, int toleranceDeg = 15) {
  double dir = std::fmod(thetaDeg + 90.0, 180.0);
  if (dir < 0) dir += 180.0;
  if (std::abs(dir - 90.0) <= toleranceDeg) return Orientation::vertical;
  if (dir <= toleranceDeg || dir >= 180.0 - toleranceDeg) return Orientation::horizontal;
  return Orientation::diagonal;
}

// Binary edge map: Sobel magnitude of luma, normalized by the image maximum.
inline std::vector<std::uint8_t> sobelEdges(const Raster& raster, double threshold) {
  const int w = raster.width(), h = raster.height();
  std::vector<double> luma(raster.size());
  for (std::size_t i = 0; i < luma.size(); ++i) {
    const Rgb& c = raster.pixels()[i];
    luma[i] = (0.299 * c.r + 0.587 * c.g + 0.114 * c.b) / 255.0;
  }
  auto I = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return luma[static_cast<std::size_t>(y) * w + x];
  };
  std::vector<double> magnitude(raster.size(), 0.0);
  double maxMagnitude = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (I(x + 1, y - 1) + 2 * I(x + 1, y) + I(x + 1, y + 1)) -
                        (I(x - 1, y - 1) + 2 * I(x - 1, y) + I(x - 1, y + 1));
      const double gy = (I(x - 1, y + 1) + 2 * I(x, y + 1) + I(x + 1, y + 1)) -
                        (I(x - 1, y - 1) + 2 * I(x, y - 1) + I(x + 1, y - 1));
      const double m = std::hypot(gx, gy);
      magnitude[static_cast<std::size_t>(y) * w + x] = m;
      maxMagnitude = std::max(maxMagnitude, m);
    }
  }
  std::vector<std::uint8_t> edges(raster.size(), 0);
  // flat images (up to 8-bit quantization noise) have no edges
  if (maxMagnitude < 4.0 / 255.0) return edges;
  for (std::size_t i = 0; i < magnitude.size(); ++i) edges[i] = magnitude[i] / maxMagnitude > threshold;
  return edges;
}

inline LineStats detectLines(const Raster& raster, const HoughParams& params = {}) {
  const int w = raster.width(), h = raster.height();
  const std::vector<std::uint8_t> edges = sobelEdges(raster, params.edgeThreshold);

  constexpr int kThetaBins = 180;
  const int maxRho = static_cast<int>(std::ceil(std::hypot(w, h)));
  const int rhoBins = 2 * maxRho + 1;
  std::array<double, kThetaBins> cosT{}, sinT{};
  for (int t = 0; t < kThetaBins; ++t) {
    const double rad = t * std::numbers::pi / 180.0;
    cosT[t] = std::cos(rad);
    sinT[t] = std::sin(rad);
  }

  std::vector<int> acc(static_cast<std::size_t>(kThetaBins) * rhoBins, 0);
  auto cell = [&](int t, int r) -> int& { return acc[static_cast<std::size_t>(t) * rhoBins + r]; };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!edges[static_cast<std::size_t>(y) * w + x]) continue;
      for (int t = 0; t < kThetaBins; ++t) {
        const int r = static_cast<int>(std::lround(x * cosT[t] + y * sinT[t])) + maxRho;
        ++cell(t, r);
      }
    }

  const double threshold = params.peakFraction * std::max(w, h);
  const int rad = params.suppressionRadius;
  LineStats stats;
  for (int t = 0; t < kThetaBins; ++t) {
    for (int r = 0; r < rhoBins; ++r) {
      const int v = cell(t, r);
      if (v < threshold) continue;
      const std::size_t self = static_cast<std::size_t>(t) * rhoBins + r;
      bool peak = true;
      for (int dt = -rad; dt <= rad && peak; ++dt) {
        for (int dr = -rad; dr <= rad; ++dr) {
          if (dt == 0 && dr == 0) continue;
          // theta wraps at 180 degrees with rho mirrored
          int nt = t + dt;
          int nr = r + dr - maxRho;
          if (nt < 0 || nt >= kThetaBins) {
            nt = (nt + kThetaBins) % kThetaBins;
            nr = -nr;
          }
          nr += maxRho;
          if (nr < 0 || nr >= rhoBins) continue;
          const int nv = cell(nt, nr);
          const std::size_t other = static_cast<std::size_t>(nt) * rhoBins + nr;
          if (nv > v || (nv == v && other < self)) {
            peak = false;
            break;
          }
        }
      }
      if (!peak) continue;
      DetectedLine line{static_cast<double>(r - maxRho), t, v,
                        classifyNormalAngle(t, params.classTolerance)};
      switch (line.orientation) {
        case Orientation::horizontal: ++stats.horizontal; break;
        case Orientation::vertical: ++stats.vertical; break;
        case Orientation::diagonal: ++stats.diagonal; break;
      }
      stats.lines.push_back(line);
    }
  }
  stats.diagonalFraction = static_cast<double>(stats.diagonal) / std::max(1, stats.total());
  return stats;
}

}  // namespace copaint
