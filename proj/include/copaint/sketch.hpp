#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "metaphor.hpp"
#include "raster.hpp"
#include "taxonomy.hpp"

namespace copaint {

struct Point2 {
  double x = 0.0, y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Disc {
  Point2 center;
  double radius = 1.0;
  Rgb color;
};
struct Triangle {
  std::array<Point2, 3> points;
  Rgb color;
};
struct Rect {
  Point2 corner;  // top-left
  double width = 1.0, height = 1.0;
  Rgb color;
};
struct Segment {
  Point2 p1, p2;
  double thickness = 1.0;
  Rgb color;
};

using Primitive = std::variant<Disc, Triangle, Rect, Segment>;

// Continuous canvas coordinates; pixel (x, y) covers [x, x+1) x [y, y+1).
struct VectorComposition {
  int width = 1, height = 1;
  std::vector<Primitive> primitives;
};

// ---------------------------------------------------------------------------
// Geometry

inline double segmentDistance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

inline bool covers(const Disc& d, Point2 p) { return std::hypot(p.x - d.center.x, p.y - d.center.y) <= d.radius; }

inline bool covers(const Triangle& t, Point2 p) {
  auto cross = [](Point2 a, Point2 b, Point2 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); };
  const double d1 = cross(t.points[0], t.points[1], p);
  const double d2 = cross(t.points[1], t.points[2], p);
  const double d3 = cross(t.points[2], t.points[0], p);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

inline bool covers(const Rect& r, Point2 p) {
  return p.x >= r.corner.x && p.x < r.corner.x + r.width && p.y >= r.corner.y && p.y < r.corner.y + r.height;
}

inline bool covers(const Segment& s, Point2 p) { return segmentDistance(p, s.p1, s.p2) <= s.thickness / 2.0; }

struct Box {
  double x0, y0, x1, y1;
};

inline Box bounds(const Primitive& prim) {
  return std::visit(
      [](const auto& s) -> Box {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return {s.center.x - s.radius, s.center.y - s.radius, s.center.x + s.radius, s.center.y + s.radius};
        } else if constexpr (std::is_same_v<T, Triangle>) {
          Box b{s.points[0].x, s.points[0].y, s.points[0].x, s.points[0].y};
          for (const auto& q : s.points) {
            b.x0 = std::min(b.x0, q.x);
            b.y0 = std::min(b.y0, q.y);
            b.x1 = std::max(b.x1, q.x);
            b.y1 = std::max(b.y1, q.y);
          }
          return b;
        } else if constexpr (std::is_same_v<T, Rect>) {
          return {s.corner.x, s.corner.y, s.corner.x + s.width, s.corner.y + s.height};
        } else {
          const double r = s.thickness / 2.0;
          return {std::min(s.p1.x, s.p2.x) - r, std::min(s.p1.y, s.p2.y) - r, std::max(s.p1.x, s.p2.x) + r,
                  std::max(s.p1.y, s.p2.y) + r};
        }
      },
      prim);
}

inline Rgb colorOf(const Primitive& prim) {
  return std::visit([](const auto& s) { return s.color; }, prim);
}

// ---------------------------------------------------------------------------
// Rasterization

// Painter's order onto white, supersampled and box-filtered.
inline Raster rasterize(const VectorComposition& comp, int supersample = 2) {
  if (supersample < 1) throw InvalidArgument("supersample must be >= 1");
  const int S = supersample;
  const int W = comp.width * S, H = comp.height * S;
  std::vector<Rgb> hi(static_cast<std::size_t>(W) * H, kWhite);
  for (const Primitive& prim : comp.primitives) {
    const Box b = bounds(prim);
    const int x0 = std::max(0, static_cast<int>(std::floor(b.x0 * S)));
    const int y0 = std::max(0, static_cast<int>(std::floor(b.y0 * S)));
    const int x1 = std::min(W - 1, static_cast<int>(std::ceil(b.x1 * S)));
    const int y1 = std::min(H - 1, static_cast<int>(std::ceil(b.y1 * S)));
    const Rgb color = colorOf(prim);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const Point2 p{(x + 0.5) / S, (y + 0.5) / S};
        if (std::visit([&](const auto& s) { return covers(s, p); }, prim)) hi[static_cast<std::size_t>(y) * W + x] = color;
      }
  }
  Raster out(comp.width, comp.height);
  const int n = S * S;
  for (int y = 0; y < comp.height; ++y)
    for (int x = 0; x < comp.width; ++x) {
      int r = 0, g = 0, b = 0;
      for (int sy = 0; sy < S; ++sy)
        for (int sx = 0; sx < S; ++sx) {
          const Rgb& c = hi[static_cast<std::size_t>(y * S + sy) * W + (x * S + sx)];
          r += c.r;
          g += c.g;
          b += c.b;
        }
      out.at(x, y) = {static_cast<std::uint8_t>((r + n / 2) / n), static_cast<std::uint8_t>((g + n / 2) / n),
                      static_cast<std::uint8_t>((b + n / 2) / n)};
    }
  return out;
}

inline std::string toSvg(const VectorComposition& comp) {
  std::ostringstream s;
  s.precision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << comp.width << "\" height=\"" << comp.height
    << "\" viewBox=\"0 0 " << comp.width << ' ' << comp.height << "\">\n";
  s << "  <rect x=\"0\" y=\"0\" width=\"" << comp.width << "\" height=\"" << comp.height << "\" fill=\"#ffffff\"/>\n";
  for (const Primitive& prim : comp.primitives) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          const std::string color = toHex(p.color);
          if constexpr (std::is_same_v<T, Disc>) {
            s << "  <circle cx=\"" << p.center.x << "\" cy=\"" << p.center.y << "\" r=\"" << p.radius << "\" fill=\""
              << color << "\"/>\n";
          } else if constexpr (std::is_same_v<T, Triangle>) {
            s << "  <polygon points=\"";
            for (std::size_t i = 0; i < 3; ++i) s << (i ? " " : "") << p.points[i].x << ',' << p.points[i].y;
            s << "\" fill=\"" << color << "\"/>\n";
          } else if constexpr (std::is_same_v<T, Rect>) {
            s << "  <rect x=\"" << p.corner.x << "\" y=\"" << p.corner.y << "\" width=\"" << p.width
              << "\" height=\"" << p.height << "\" fill=\"" << color << "\"/>\n";
          } else {
            s << "  <line x1=\"" << p.p1.x << "\" y1=\"" << p.p1.y << "\" x2=\"" << p.p2.x << "\" y2=\"" << p.p2.y
              << "\" stroke=\"" << color << "\" stroke-width=\"" << p.thickness
              << "\" stroke-linecap=\"round\"/>\n";
          }
        },
        prim);
  }
  s << "</svg>\n";
  return s.str();
}

// ---------------------------------------------------------------------------
// Abstract composition

inline Rgb elementColor(Element e) {
  switch (e) {
    case Element::red: return {220, 32, 32};
    case Element::orange: return {240, 128, 32};
    case Element::yellow: return {245, 220, 30};
    case Element::green: return {48, 160, 64};
    case Element::blue: return {32, 80, 208};
    case Element::purple: return {128, 48, 176};
    case Element::white: return {250, 250, 250};
    case Element::black: return {16, 16, 16};
    case Element::gray: return {128, 128, 128};
    case Element::pink: return {240, 144, 176};
    case Element::brown: return {128, 72, 32};
    default: return {96, 96, 96};
  }
}

namespace detail {

// Portable uniform draw in [lo, hi); std distributions differ across
// standard libraries.
inline double uniform(std::mt19937& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng()) / 4294967296.0);
}

// Largest-remainder split of `total` slots, at least one per weight.
inline std::vector<int> apportion(const std::vector<double>& weights, int total) {
  const std::size_t n = weights.size();
  std::vector<int> out(n, 1);
  int left = total - static_cast<int>(n);
  if (left <= 0) return out;
  double sum = 0;
  for (double w : weights) sum += w;
  std::vector<std::pair<double, std::size_t>> rem;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = left * weights[i] / sum;
    const int whole = static_cast<int>(std::floor(exact));
    out[i] += whole;
    rem.emplace_back(exact - whole, i);
  }
  int assigned = 0;
  for (int v : out) assigned += v;
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total && k < rem.size(); ++k, ++assigned) ++out[rem[k].second];
  return out;
}

}  // namespace detail

// Deterministic for a given seed. Shape-free recipes become one rectangle per
// color covering 60% of the canvas in total.
inline VectorComposition composeAbstract(const Recipe& recipe, int width, int height, std::uint32_t seed) {
  recipe.validate();
  if (width < 1 || height < 1) throw InvalidArgument("canvas dimensions must be >= 1");
  VectorComposition comp{width, height, {}};

  std::vector<RecipeElement> colors, marks;
  for (const auto& e : recipe.elements) (kindOf(e.element) == ElementKind::color ? colors : marks).push_back(e);
  std::stable_sort(colors.begin(), colors.end(), [](const auto& a, const auto& b) { return a.weight > b.weight; });

  if (marks.empty() || recipe.shapeCount == 0) {
    const double scale = std::sqrt(0.6);
    const double rw = width * scale, rh = height * scale;
    const double x0 = (width - rw) / 2.0;
    double y = (height - rh) / 2.0;
    double colorSum = 0;
    for (const auto& c : colors) colorSum += c.weight;
    for (const auto& c : colors) {
      const double h = rh * c.weight / colorSum;
      comp.primitives.push_back(Rect{{x0, y}, rw, h, elementColor(c.element)});
      y += h;
    }
    return comp;
  }

  std::mt19937 rng(seed);
  std::vector<double> weights;
  for (const auto& m : marks) weights.push_back(m.weight);
  const std::vector<int> counts = detail::apportion(weights, recipe.shapeCount);
  const double unit = std::min(width, height);
  std::size_t colorIdx = 0;
  int diagonalCount = 0;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    for (int k = 0; k < counts[i]; ++k) {
      const Rgb color = elementColor(colors[colorIdx++ % colors.size()].element);
      const double size = detail::uniform(rng, 0.08, 0.18) * unit;
      const double cx = detail::uniform(rng, size, width - size);
      const double cy = detail::uniform(rng, size, height - size);
      switch (marks[i].element) {
        case Element::circle:
          comp.primitives.push_back(Disc{{cx, cy}, size, color});
          break;
        case Element::square:
          comp.primitives.push_back(Rect{{cx - size, cy - size}, 2 * size, 2 * size, color});
          break;
        case Element::triangle: {
          const double h = size * std::numbers::sqrt3 / 2.0;
          comp.primitives.push_back(Triangle{{{{cx, cy - size}, {cx - h, cy + size / 2}, {cx + h, cy + size / 2}}}, color});
          break;
        }
        default: {
          double angle = 0.0;
          if (marks[i].element == Element::vertical) angle = 90.0;
          if (marks[i].element == Element::diagonal) angle = (diagonalCount++ % 2 == 0) ? 45.0 : 135.0;
          const double half = detail::uniform(rng, 0.15, 0.3) * unit;
          const double thickness = std::max(1.0, 0.03 * unit);
          const double rad = angle * std::numbers::pi / 180.0;
          double dx = half * std::cos(rad), dy = half * std::sin(rad);
          const double mx = std::clamp(cx, std::abs(dx) + thickness, width - std::abs(dx) - thickness);
          const double my = std::clamp(cy, std::abs(dy) + thickness, height - std::abs(dy) - thickness);
          comp.primitives.push_back(Segment{{mx - dx, my - dy}, {mx + dx, my + dy}, thickness, color});
        }
      }
    }
  }
  return comp;
}

// ---------------------------------------------------------------------------
// Representational composition

using AssetLibrary = std::map<std::string, VectorComposition>;

// Hand-drawn 100x100 clip-art templates for the demo symbols.
inline const AssetLibrary& bundledAssets() {
  static const AssetLibrary lib = [] {
    const Rgb red{220, 40, 40}, yellow{245, 210, 40}, blue{60, 120, 220}, green{50, 150, 70},
        darkGreen{30, 100, 50}, brown{120, 72, 36}, gray{120, 120, 120}, black{20, 20, 20}, white{250, 250, 250},
        pink{240, 140, 180}, orange{245, 140, 40}, purple{140, 60, 180};
    AssetLibrary a;
    a["balloon"] = {100, 100, {Disc{{35, 30}, 14, red}, Disc{{62, 26}, 14, yellow}, Disc{{50, 46}, 14, blue},
                               Segment{{35, 44}, {50, 90}, 1.5, black}, Segment{{62, 40}, {50, 90}, 1.5, black},
                               Segment{{50, 60}, {50, 90}, 1.5, black}}};
    a["presents"] = {100, 100, {Rect{{15, 50}, 40, 40, red}, Rect{{55, 60}, 30, 30, blue},
                                Rect{{32, 50}, 6, 40, yellow}, Rect{{15, 67}, 40, 6, yellow},
                                Rect{{67, 60}, 6, 30, white}, Triangle{{{{35, 50}, {25, 40}, {45, 40}}}, yellow}}};
    a["brook"] = {100, 100, {Rect{{0, 0}, 100, 100, green}, Segment{{0, 40}, {35, 55}, 10, blue},
                             Segment{{35, 55}, {65, 48}, 10, blue}, Segment{{65, 48}, {100, 65}, 10, blue},
                             Disc{{20, 75}, 4, gray}, Disc{{80, 30}, 5, gray}}};
    a["forest"] = {100, 100, {Triangle{{{{20, 20}, {5, 70}, {35, 70}}}, darkGreen}, Rect{{17, 70}, 6, 15, brown},
                              Triangle{{{{50, 10}, {32, 70}, {68, 70}}}, green}, Rect{{47, 70}, 6, 15, brown},
                              Triangle{{{{80, 22}, {65, 70}, {95, 70}}}, darkGreen}, Rect{{77, 70}, 6, 15, brown}}};
    a["grave"] = {100, 100, {Rect{{0, 80}, 100, 20, darkGreen}, Rect{{35, 35}, 30, 50, gray},
                             Disc{{50, 35}, 15, gray}, Segment{{50, 40}, {50, 60}, 3, black},
                             Segment{{42, 47}, {58, 47}, 3, black}}};
    a["gun"] = {100, 100, {Rect{{15, 35}, 60, 14, black}, Rect{{55, 49}, 14, 30, black},
                           Segment{{50, 49}, {52, 60}, 3, gray}, Rect{{75, 38}, 10, 8, gray}}};
    a["snake"] = {100, 100, {Segment{{10, 70}, {30, 50}, 8, green}, Segment{{30, 50}, {50, 70}, 8, green},
                             Segment{{50, 70}, {70, 50}, 8, green}, Disc{{75, 45}, 8, darkGreen},
                             Segment{{82, 45}, {92, 42}, 1.5, red}}};
    a["dog"] = {100, 100, {Rect{{25, 45}, 45, 22, brown}, Disc{{75, 40}, 13, brown}, Triangle{{{{70, 30}, {64, 48}, {76, 44}}}, black},
                           Rect{{28, 65}, 6, 20, brown}, Rect{{60, 65}, 6, 20, brown},
                           Segment{{25, 50}, {12, 38}, 4, brown}, Disc{{79, 38}, 2, black}}};
    a["cat"] = {100, 100, {Disc{{50, 62}, 22, gray}, Disc{{50, 35}, 15, gray},
                           Triangle{{{{38, 28}, {40, 12}, {48, 22}}}, gray}, Triangle{{{{62, 28}, {60, 12}, {52, 22}}}, gray},
                           Segment{{72, 70}, {88, 50}, 4, gray}, Disc{{45, 33}, 2, black}, Disc{{55, 33}, 2, black}}};
    a["flower"] = {100, 100, {Segment{{50, 50}, {50, 95}, 4, green}, Disc{{50, 25}, 10, pink}, Disc{{35, 38}, 10, pink},
                              Disc{{65, 38}, 10, pink}, Disc{{40, 55}, 10, pink}, Disc{{60, 55}, 10, pink},
                              Disc{{50, 42}, 8, yellow}}};
    a["sun"] = {100, 100, {Segment{{50, 5}, {50, 95}, 3, orange}, Segment{{5, 50}, {95, 50}, 3, orange},
                           Segment{{18, 18}, {82, 82}, 3, orange}, Segment{{82, 18}, {18, 82}, 3, orange},
                           Disc{{50, 50}, 25, yellow}}};
    a["rain"] = {100, 100, {Disc{{35, 30}, 18, gray}, Disc{{60, 25}, 20, gray}, Disc{{75, 35}, 14, gray},
                            Segment{{30, 55}, {26, 70}, 2, blue}, Segment{{50, 55}, {46, 75}, 2, blue},
                            Segment{{70, 55}, {66, 70}, 2, blue}, Segment{{40, 75}, {36, 90}, 2, blue},
                            Segment{{60, 78}, {56, 93}, 2, blue}}};
    a["skull"] = {100, 100, {Disc{{50, 42}, 28, white}, Rect{{36, 60}, 28, 20, white}, Disc{{39, 42}, 8, black},
                             Disc{{61, 42}, 8, black}, Triangle{{{{50, 52}, {45, 60}, {55, 60}}}, black},
                             Segment{{43, 70}, {43, 80}, 2, black}, Segment{{57, 70}, {57, 80}, 2, black}}};
    a["candle"] = {100, 100, {Rect{{40, 40}, 20, 50, white}, Segment{{50, 40}, {50, 32}, 2, black},
                              Triangle{{{{50, 12}, {43, 30}, {57, 30}}}, orange}, Disc{{50, 27}, 4, yellow},
                              Rect{{30, 88}, 40, 5, purple}}};
    return a;
  }();
  return lib;
}

inline const VectorComposition* findAsset(const AssetLibrary& assets, std::string_view symbol) {
  std::string slug(taxpath::leafName(symbol));
  for (const std::string& cand : {slug, slug.size() > 1 && slug.ends_with('s') ? slug.substr(0, slug.size() - 1) : slug}) {
    if (auto it = assets.find(cand); it != assets.end()) return &it->second;
  }
  return nullptr;
}

// Scales the asset's bounding box into the canvas with a 5% margin and
// centers it.
inline VectorComposition composeRepresentational(std::string_view symbol, const AssetLibrary& assets, int width,
                                                 int height) {
  if (width < 1 || height < 1) throw InvalidArgument("canvas dimensions must be >= 1");
  const VectorComposition* tpl = findAsset(assets, symbol);
  if (!tpl) throw MissingAsset("no asset for '" + std::string(symbol) + "'");
  VectorComposition comp{width, height, {}};
  if (tpl->primitives.empty()) return comp;

  Box box = bounds(tpl->primitives.front());
  for (const auto& p : tpl->primitives) {
    const Box b = bounds(p);
    box = {std::min(box.x0, b.x0), std::min(box.y0, b.y0), std::max(box.x1, b.x1), std::max(box.y1, b.y1)};
  }
  const double bw = std::max(box.x1 - box.x0, 1e-9), bh = std::max(box.y1 - box.y0, 1e-9);
  const double s = std::min(0.9 * width / bw, 0.9 * height / bh);
  const double ox = (width - s * bw) / 2.0 - s * box.x0;
  const double oy = (height - s * bh) / 2.0 - s * box.y0;
  auto tf = [&](Point2 p) { return Point2{ox + s * p.x, oy + s * p.y}; };
  for (const auto& prim : tpl->primitives) {
    comp.primitives.push_back(std::visit(
        [&](const auto& p) -> Primitive {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Disc>) {
            return Disc{tf(p.center), s * p.radius, p.color};
          } else if constexpr (std::is_same_v<T, Triangle>) {
            return Triangle{{{tf(p.points[0]), tf(p.points[1]), tf(p.points[2])}}, p.color};
          } else if constexpr (std::is_same_v<T, Rect>) {
            return Rect{tf(p.corner), s * p.width, s * p.height, p.color};
          } else {
            return Segment{tf(p.p1), tf(p.p2), s * p.thickness, p.color};
          }
        },
        prim));
  }
  return comp;
}

// ---------------------------------------------------------------------------
// Stroke planning

// Stroke points are pixel-center coordinates; a pixel is painted when its
// center lies within thickness/2 of the polyline.
struct Stroke {
  std::vector<Point2> points;
  double thickness = 1.0;
  Rgb color;
  friend bool operator==(const Stroke&, const Stroke&) = default;
};

struct StrokePlan {
  int budget = 0;
  double initialError = 0.0;
  double residualError = 0.0;
  std::vector<Stroke> strokes;
  std::vector<double> errors;  // residual after each stroke
};

struct StrokeSet {
  std::vector<Rgb> palette;  // empty: most frequent target colors that differ from the canvas
  std::vector<double> thicknesses{1.0, 3.0, 5.0};
  std::vector<double> lengths{4.0, 8.0, 16.0};
  int gridStep = 4;
  int maxPaletteColors = 8;
  double epsilonFraction = 0.005;  // of the initial error
};

inline constexpr std::array<int, 4> kStrokeAngles{0, 45, 90, 135};

template <typename Fn>
inline void forEachStrokePixel(const Stroke& stroke, int width, int height, Fn&& fn) {
  if (stroke.points.empty()) return;
  const double r = stroke.thickness / 2.0;
  double x0 = stroke.points[0].x, x1 = x0, y0 = stroke.points[0].y, y1 = y0;
  for (const auto& p : stroke.points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const int ix0 = std::max(0, static_cast<int>(std::floor(x0 - r))), ix1 = std::min(width - 1, static_cast<int>(std::ceil(x1 + r)));
  const int iy0 = std::max(0, static_cast<int>(std::floor(y0 - r))), iy1 = std::min(height - 1, static_cast<int>(std::ceil(y1 + r)));
  for (int y = iy0; y <= iy1; ++y)
    for (int x = ix0; x <= ix1; ++x) {
      const Point2 c{static_cast<double>(x), static_cast<double>(y)};
      bool hit = stroke.points.size() == 1 && std::hypot(c.x - stroke.points[0].x, c.y - stroke.points[0].y) <= r + 1e-9;
      for (std::size_t i = 1; i < stroke.points.size() && !hit; ++i)
        hit = segmentDistance(c, stroke.points[i - 1], stroke.points[i]) <= r + 1e-9;
      if (hit) fn(x, y);
    }
}

inline void paintStroke(Raster& canvas, const Stroke& stroke) {
  forEachStrokePixel(stroke, canvas.width(), canvas.height(), [&](int x, int y) { canvas.at(x, y) = stroke.color; });
}

// Sum of squared 8-bit channel differences.
inline std::int64_t squaredError(const Raster& a, const Raster& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw DimensionMismatch("raster sizes differ");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rgb &p = a.pixels()[i], &q = b.pixels()[i];
    s += (p.r - q.r) * (p.r - q.r) + (p.g - q.g) * (p.g - q.g) + (p.b - q.b) * (p.b - q.b);
  }
  return s;
}

// L2 distance with channels scaled to [0, 1].
inline double l2Error(std::int64_t squared) { return std::sqrt(static_cast<double>(squared)) / 255.0; }
inline double l2Error(const Raster& a, const Raster& b) { return l2Error(squaredError(a, b)); }

inline std::vector<Rgb> derivePalette(const Raster& target, const Raster& current, int maxColors) {
  std::map<std::uint32_t, std::size_t> counts;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Rgb& t = target.pixels()[i];
    if (t == current.pixels()[i]) continue;
    ++counts[(static_cast<std::uint32_t>(t.r) << 16) | (t.g << 8) | t.b];
  }
  std::vector<std::pair<std::size_t, std::uint32_t>> ranked;
  for (const auto& [rgb, n] : counts) ranked.emplace_back(n, rgb);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Rgb> out;
  for (std::size_t i = 0; i < ranked.size() && static_cast<int>(i) < maxColors; ++i) {
    const std::uint32_t v = ranked[i].second;
    out.push_back({static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>((v >> 8) & 255), static_cast<std::uint8_t>(v & 255)});
  }
  return out;
}

// Candidate geometries: a segment from each grid anchor along each class
// angle, for every length and thickness, kept when both ends are on canvas.
inline std::vector<Stroke> candidateGeometries(int width, int height, const StrokeSet& set) {
  if (set.gridStep < 1) throw InvalidArgument("gridStep must be >= 1");
  std::vector<Stroke> out;
  for (int ay = 0; ay < height; ay += set.gridStep)
    for (int ax = 0; ax < width; ax += set.gridStep)
      for (int angle : kStrokeAngles)
        for (double len : set.lengths)
          for (double thick : set.thicknesses) {
            const double rad = angle * std::numbers::pi / 180.0;
            const double ex = std::round((ax + len * std::cos(rad)) * 1e9) / 1e9;
            const double ey = std::round((ay + len * std::sin(rad)) * 1e9) / 1e9;
            if (ex < 0 || ey < 0 || ex > width - 1 || ey > height - 1) continue;
            out.push_back(Stroke{{{static_cast<double>(ax), static_cast<double>(ay)}, {ex, ey}}, thick, {}});
          }
  return out;
}

// Greedy visual-feedback loop: repeatedly paint the candidate stroke with the
// largest error reduction until the budget is spent or the best reduction
// falls below epsilon. Ties go to the earliest candidate (geometry order, then
// palette order).
inline StrokePlan planStrokes(const Raster& target, Raster current, int budget, const StrokeSet& set = {}) {
  if (target.width() != current.width() || target.height() != current.height())
    throw DimensionMismatch("target and current canvas differ in size");
  if (budget < 0) throw InvalidArgument("budget must be >= 0");
  const int W = target.width(), H = target.height();

  StrokePlan plan;
  plan.budget = budget;
  std::int64_t sq = squaredError(target, current);
  plan.initialError = plan.residualError = l2Error(sq);
  if (budget == 0 || sq == 0) return plan;

  const std::vector<Rgb> palette = set.palette.empty() ? derivePalette(target, current, set.maxPaletteColors) : set.palette;
  if (palette.empty()) return plan;
  const std::size_t P = palette.size();

  struct Geometry {
    Stroke stroke;
    std::vector<int> pixels;
    int x0, y0, x1, y1;
  };
  std::vector<Geometry> geoms;
  for (Stroke& s : candidateGeometries(W, H, set)) {
    Geometry g{std::move(s), {}, W, H, -1, -1};
    forEachStrokePixel(g.stroke, W, H, [&](int x, int y) {
      g.pixels.push_back(y * W + x);
      g.x0 = std::min(g.x0, x);
      g.y0 = std::min(g.y0, y);
      g.x1 = std::max(g.x1, x);
      g.y1 = std::max(g.y1, y);
    });
    if (!g.pixels.empty()) geoms.push_back(std::move(g));
  }

  auto sqd = [](Rgb a, Rgb b) {
    return static_cast<std::int64_t>((a.r - b.r) * (a.r - b.r) + (a.g - b.g) * (a.g - b.g) + (a.b - b.b) * (a.b - b.b));
  };
  // gainAt[p * P + c]: squared-error reduction from painting pixel p with color c
  std::vector<std::int64_t> gainAt(static_cast<std::size_t>(W) * H * P);
  auto refreshPixel = [&](int p) {
    const Rgb t = target.pixels()[p], cur = current.pixels()[p];
    const std::int64_t now = sqd(t, cur);
    for (std::size_t c = 0; c < P; ++c) gainAt[p * P + c] = now - sqd(t, palette[c]);
  };
  for (int p = 0; p < W * H; ++p) refreshPixel(p);

  std::vector<std::int64_t> gains(geoms.size() * P);
  auto refreshGeometry = [&](std::size_t g) {
    std::int64_t* out = &gains[g * P];
    std::fill(out, out + P, 0);
    for (int p : geoms[g].pixels)
      for (std::size_t c = 0; c < P; ++c) out[c] += gainAt[p * P + c];
  };
  for (std::size_t g = 0; g < geoms.size(); ++g) refreshGeometry(g);

  const double epsilon = set.epsilonFraction * plan.initialError;
  while (static_cast<int>(plan.strokes.size()) < budget) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < gains.size(); ++i)
      if (gains[i] > gains[best]) best = i;
    const std::int64_t gain = gains[best];
    if (gain <= 0) break;
    const double before = l2Error(sq), after = l2Error(sq - gain);
    if (before - after < epsilon) break;

    const Geometry& g = geoms[best / P];
    const Rgb color = palette[best % P];
    for (int p : g.pixels) {
      current.pixels()[p] = color;
      refreshPixel(p);
    }
    sq -= gain;
    Stroke stroke = g.stroke;
    stroke.color = color;
    plan.strokes.push_back(std::move(stroke));
    plan.errors.push_back(after);
    plan.residualError = after;
    const int bx0 = g.x0, by0 = g.y0, bx1 = g.x1, by1 = g.y1;
    for (std::size_t k = 0; k < geoms.size(); ++k) {
      const Geometry& o = geoms[k];
      if (o.x1 < bx0 || o.x0 > bx1 || o.y1 < by0 || o.y0 > by1) continue;
      refreshGeometry(k);
    }
  }
  return plan;
}

inline StrokePlan offsetPlan(StrokePlan plan, double dx, double dy) {
  for (auto& s : plan.strokes)
    for (auto& p : s.points) {
      p.x += dx;
      p.y += dy;
    }
  return plan;
}

}  // namespace copaint
