#include <gtest/gtest.h>

#include "copaint/canvas_analysis.hpp"
#include "copaint/png_io.hpp"
#include "support.hpp"

using namespace copaint;
using namespace testsupport;

namespace {

std::vector<std::uint8_t> rgbaPng(int w, int h, const std::vector<std::uint8_t>& rgba) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = w;
  img.height = h;
  img.format = PNG_FORMAT_RGBA;
  png_alloc_size_t size = 0;
  png_image_write_to_memory(&img, nullptr, &size, 0, rgba.data(), 0, nullptr);
  std::vector<std::uint8_t> out(size);
  png_image_write_to_memory(&img, out.data(), &size, 0, rgba.data(), 0, nullptr);
  out.resize(size);
  return out;
}

}  // namespace

TEST(LoadCanvas, WhitePixel) {
  const Raster r = loadCanvas(encodePng(Raster(1, 1, kWhite)));
  EXPECT_EQ(r.width(), 1);
  EXPECT_EQ(r.height(), 1);
  EXPECT_EQ(r.at(0, 0), kWhite);
}

TEST(LoadCanvas, SolidRed) {
  const Raster r = loadCanvas(encodePng(Raster(2, 2, Rgb{255, 0, 0})));
  for (const Rgb& p : r.pixels()) EXPECT_EQ(p, (Rgb{255, 0, 0}));
}

TEST(LoadCanvas, TransparentPixelCompositesOverWhite) {
  const Raster r = loadCanvas(rgbaPng(2, 1, {0, 0, 0, 0, 0, 0, 255, 255}));
  EXPECT_EQ(r.at(0, 0), kWhite);
  EXPECT_EQ(r.at(1, 0), (Rgb{0, 0, 255}));
}

TEST(LoadCanvas, HalfTransparentBlend) {
  const Raster r = loadCanvas(rgbaPng(1, 1, {0, 0, 0, 128}));
  EXPECT_NEAR(r.at(0, 0).r, 127, 1);
}

TEST(LoadCanvas, Errors) {
  const std::vector<std::uint8_t> gif{'G', 'I', 'F', '8', '9', 'a', 0, 0, 0, 0};
  EXPECT_THROW(loadCanvas(gif), UnsupportedFormat);
  auto png = encodePng(Raster(4, 4));
  png.resize(png.size() / 2);
  EXPECT_THROW(loadCanvas(png), DecodeError);
  std::vector<std::uint8_t> sigOnly(detail::kPngSignature, detail::kPngSignature + 8);
  EXPECT_THROW(loadCanvas(sigOnly), DecodeError);
}

TEST(LoadCanvas, RoundTripRandom) {
  std::mt19937 rng(3);
  const Raster r = randomRaster(rng, 17, 9);
  EXPECT_EQ(loadCanvas(encodePng(r)), r);
}

TEST(HueHistogram, MidGray) {
  const HueAreas h = hueHistogram(Raster(8, 8, Rgb{128, 128, 128}));
  EXPECT_DOUBLE_EQ(h[HueBin::gray], 1.0);
  EXPECT_NEAR(h.meanValue, 128.0 / 255.0, 1e-12);
  EXPECT_NEAR(h.meanValue, 0.502, 1e-3);
}

TEST(HueHistogram, PureYellow) {
  const HueAreas h = hueHistogram(Raster(5, 5, Rgb{255, 255, 0}));
  EXPECT_DOUBLE_EQ(h[HueBin::yellow], 1.0);
  EXPECT_DOUBLE_EQ(h.meanValue, 1.0);
}

TEST(HueHistogram, HalfRedHalfBlack) {
  Raster r(10, 6, Rgb{255, 0, 0});
  for (int y = 0; y < 6; ++y)
    for (int x = 5; x < 10; ++x) r.at(x, y) = kBlack;
  const HueAreas h = hueHistogram(r);
  EXPECT_DOUBLE_EQ(h[HueBin::red], 0.5);
  EXPECT_DOUBLE_EQ(h[HueBin::black], 0.5);
  EXPECT_DOUBLE_EQ(h.meanValue, 0.5);
}

TEST(HueHistogram, BinEdges) {
  EXPECT_EQ(classifyPixel({30, 30, 30}), HueBin::black);      // value < 0.15
  EXPECT_EQ(classifyPixel({240, 240, 240}), HueBin::white);   // low saturation, bright
  EXPECT_EQ(classifyPixel({200, 200, 200}), HueBin::gray);    // low saturation, value 0.78
  EXPECT_EQ(classifyPixel({255, 128, 0}), HueBin::orange);    // hue ~30
  EXPECT_EQ(classifyPixel({0, 255, 0}), HueBin::green);       // 120
  EXPECT_EQ(classifyPixel({0, 0, 255}), HueBin::blue);        // 240
  EXPECT_EQ(classifyPixel({128, 0, 255}), HueBin::purple);    // ~270
  EXPECT_EQ(classifyPixel({255, 0, 60}), HueBin::red);        // ~345.9
  EXPECT_EQ(classifyPixel({255, 0, 64}), HueBin::purple);     // ~344.9
  EXPECT_EQ(classifyPixel({255, 0, 180}), HueBin::purple);    // ~318
}

TEST(HueHistogram, PropertySumsToOneAndPermutationInvariant) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = std::uniform_int_distribution<int>(1, 40)(rng), h = std::uniform_int_distribution<int>(1, 40)(rng);
    Raster r = randomRaster(rng, w, h);
    const HueAreas a = hueHistogram(r);
    double sum = 0;
    for (double f : a.fractions) {
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
      sum += f;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    std::shuffle(r.pixels().begin(), r.pixels().end(), rng);
    const HueAreas b = hueHistogram(r);
    for (std::size_t i = 0; i < kHueBinCount; ++i) EXPECT_NEAR(a.fractions[i], b.fractions[i], 1e-12);
    EXPECT_NEAR(a.meanValue, b.meanValue, 1e-9);
  }
}

TEST(HueHistogram, ScalingBlockImages) {
  std::mt19937 rng(5);
  const std::vector<Rgb> palette{{255, 0, 0}, {0, 0, 255}, {255, 255, 0}, kBlack, kWhite, {0, 200, 0}};
  for (int trial = 0; trial < 20; ++trial) {
    Raster r(24, 24);
    for (int by = 0; by < 4; ++by)
      for (int bx = 0; bx < 4; ++bx) {
        const Rgb c = palette[std::uniform_int_distribution<std::size_t>(0, palette.size() - 1)(rng)];
        for (int y = 0; y < 6; ++y)
          for (int x = 0; x < 6; ++x) r.at(bx * 6 + x, by * 6 + y) = c;
      }
    Raster big(48, 48);
    for (int y = 0; y < 48; ++y)
      for (int x = 0; x < 48; ++x) big.at(x, y) = r.at(x / 2, y / 2);
    const HueAreas a = hueHistogram(r), b = hueHistogram(big);
    for (std::size_t i = 0; i < kHueBinCount; ++i) EXPECT_LT(std::abs(a.fractions[i] - b.fractions[i]), 0.01);
  }
}

TEST(DetectLines, BlankCanvas) {
  const LineStats s = detectLines(Raster(64, 64));
  EXPECT_EQ(s.total(), 0);
  EXPECT_DOUBLE_EQ(s.diagonalFraction, 0.0);
}

TEST(DetectLines, Diagonal45) {
  const LineStats s = detectLines(lineCanvas(64, 45));
  EXPECT_GE(s.diagonal, 1);
  EXPECT_EQ(s.horizontal, 0);
  EXPECT_EQ(s.vertical, 0);
  EXPECT_DOUBLE_EQ(s.diagonalFraction, 1.0);
}

TEST(DetectLines, Horizontal) {
  const LineStats s = detectLines(lineCanvas(64, 0));
  EXPECT_GE(s.horizontal, 1);
  EXPECT_DOUBLE_EQ(s.diagonalFraction, 0.0);
}

TEST(DetectLines, Vertical) {
  const LineStats s = detectLines(lineCanvas(64, 90));
  EXPECT_GE(s.vertical, 1);
  EXPECT_EQ(s.horizontal, 0);
  EXPECT_EQ(s.diagonal, 0);
}

TEST(DetectLines, RotationSwapsHorizontalAndVertical) {
  for (double angle : {0.0, 30.0, 45.0, 60.0, 90.0, 120.0, 170.0}) {
    const Raster r = lineCanvas(128, angle);
    const LineStats a = detectLines(r), b = detectLines(rotate90(r));
    // peak counts can differ by rho rounding; which classes fire must not
    EXPECT_EQ(a.horizontal > 0, b.vertical > 0) << angle;
    EXPECT_EQ(a.vertical > 0, b.horizontal > 0) << angle;
    EXPECT_EQ(a.diagonal > 0, b.diagonal > 0) << angle;
  }
}

TEST(DetectLines, InvariantDiagonalFraction) {
  std::mt19937 rng(9);
  for (int i = 0; i < 10; ++i) {
    Raster r(48, 48);
    for (int k = 0; k < 3; ++k) {
      std::uniform_real_distribution<double> u(0, 47);
      drawLine(r, u(rng), u(rng), u(rng), u(rng), 2, kBlack);
    }
    const LineStats s = detectLines(r);
    EXPECT_DOUBLE_EQ(s.diagonalFraction, static_cast<double>(s.diagonal) / std::max(1, s.total()));
    EXPECT_EQ(s.total(), static_cast<int>(s.lines.size()));
  }
}

TEST(ClassifyNormalAngle, Boundaries) {
  // theta is the normal; the line runs at theta + 90
  EXPECT_EQ(classifyNormalAngle(90), Orientation::horizontal);
  EXPECT_EQ(classifyNormalAngle(0), Orientation::vertical);
  EXPECT_EQ(classifyNormalAngle(135), Orientation::diagonal);
  EXPECT_EQ(classifyNormalAngle(105), Orientation::horizontal);
  EXPECT_EQ(classifyNormalAngle(106), Orientation::diagonal);
  EXPECT_EQ(classifyNormalAngle(15), Orientation::vertical);
  EXPECT_EQ(classifyNormalAngle(16), Orientation::diagonal);
  EXPECT_EQ(classifyNormalAngle(179), Orientation::vertical);
}
