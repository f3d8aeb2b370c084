#pragma once

// Shared helpers for the test suites: synthetic canvases, random instance
// generators and brute-force oracles written independently of the library.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "copaint/session.hpp"

namespace testsupport {

using namespace copaint;

// Anti-alias-free line: pixels whose center lies within thickness/2 of the
// segment are painted.
inline void drawLine(Raster& r, double x0, double y0, double x1, double y1, double thickness, Rgb color) {
  const double dx = x1 - x0, dy = y1 - y0, len2 = dx * dx + dy * dy;
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) {
      double t = len2 > 0 ? ((x - x0) * dx + (y - y0) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double px = x0 + t * dx - x, py = y0 + t * dy - y;
      if (px * px + py * py <= thickness * thickness / 4.0) r.at(x, y) = color;
    }
}

// Line through the canvas center at `angleDeg` (0 = horizontal, measured
// counter-clockwise in image coordinates with y pointing down).
inline Raster lineCanvas(int size, double angleDeg, double lengthFraction = 0.8, double thickness = 2.0) {
  Raster r(size, size, kWhite);
  const double c = (size - 1) / 2.0, half = lengthFraction * size / 2.0;
  const double rad = angleDeg * std::numbers::pi / 180.0;
  drawLine(r, c - half * std::cos(rad), c + half * std::sin(rad), c + half * std::cos(rad), c - half * std::sin(rad),
           thickness, kBlack);
  return r;
}

inline Raster rotate90(const Raster& r) {
  Raster out(r.height(), r.width());
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) out.at(r.height() - 1 - y, x) = r.at(x, y);
  return out;
}

inline Raster randomRaster(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> byte(0, 255);
  Raster r(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      r.at(x, y) = {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                    static_cast<std::uint8_t>(byte(rng))};
  return r;
}

inline VAPoint randomVA(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double v = u(rng);
  return {v, u(rng)};
}

// Random taxonomy of about `nodes` nodes; every leaf seeded.
inline Taxonomy randomTaxonomy(std::mt19937& rng, int nodes) {
  std::vector<std::string> internal{""};
  std::vector<std::string> leaves;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::string> all;
  for (int i = 0; i < nodes; ++i) {
    const std::string parent = internal[std::uniform_int_distribution<std::size_t>(0, internal.size() - 1)(rng)];
    const std::string path = taxpath::join(parent, "n" + std::to_string(i));
    all.push_back(path);
    if (std::bernoulli_distribution(0.35)(rng)) internal.push_back(path);
  }
  Taxonomy t;
  std::set<std::string> parents;
  for (const auto& p : all) parents.insert(taxpath::parent(p));
  for (const auto& p : all) {
    if (parents.contains(p)) {
      t.ensure(p);
    } else {
      const double v = u(rng);
      t.addLeaf(p, {v, u(rng)});
    }
  }
  return t;
}

inline std::vector<std::string> nonRootPaths(const Taxonomy& t) {
  std::vector<std::string> out;
  for (const auto& [p, n] : t.nodes())
    if (!p.empty()) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

// Leaves strictly by path prefix test over the whole node list.
inline std::vector<VAPoint> oracleLeaves(const Taxonomy& t, const std::string& path) {
  std::vector<VAPoint> out;
  for (const auto& [p, n] : t.nodes()) {
    const bool inside = path.empty() || p == path || p.rfind(path + "/", 0) == 0;
    if (inside && n.children.empty() && n.leafAffect) out.push_back(*n.leafAffect);
  }
  return out;
}

inline VAPoint oracleMean(const std::vector<VAPoint>& pts) {
  double v = 0, a = 0;
  for (const auto& p : pts) v += p.valence, a += p.arousal;
  return {v / pts.size(), a / pts.size()};
}

inline double oracleSpread(const std::vector<VAPoint>& pts) {
  const VAPoint m = oracleMean(pts);
  double s = 0;
  for (const auto& p : pts) s += (p.valence - m.valence) * (p.valence - m.valence) + (p.arousal - m.arousal) * (p.arousal - m.arousal);
  return std::sqrt(s / pts.size());
}

struct OracleChoice {
  std::string path;
  double score = 0;
  double dist = 0;
};

// Exhaustive scoring: every candidate scored, winner by (score, depth, path).
inline std::optional<OracleChoice> oracleSelect(const Profile& prof, VAPoint target, const std::set<std::string>& excluded,
                                                double beta) {
  std::optional<OracleChoice> best;
  std::size_t bestDepth = 0;
  for (const auto& [p, n] : prof.taxonomy.nodes()) {
    if (p.empty() || excluded.count(p)) continue;
    bool taboo = false;
    for (const auto& t : prof.taboo) taboo = taboo || p == t || p.rfind(t + "/", 0) == 0;
    if (taboo) continue;
    const auto leaves = oracleLeaves(prof.taxonomy, p);
    VAPoint affect;
    if (n.explicitAffect) affect = n.explicitAffect->affect;
    else if (!leaves.empty()) affect = oracleMean(leaves);
    else continue;
    const double spread = leaves.empty() ? 0.0 : oracleSpread(leaves);
    const double d = std::hypot(target.valence - affect.valence, target.arousal - affect.arousal);
    const double score = d + beta * spread;
    const std::size_t depth = static_cast<std::size_t>(std::count(p.begin(), p.end(), '/')) + 1;
    bool better = !best;
    if (best) {
      if (std::abs(score - best->score) > 1e-12) better = score < best->score;
      else if (depth != bestDepth) better = depth < bestDepth;
      else better = p < best->path;
    }
    if (better) {
      best = OracleChoice{p, score, d};
      bestDepth = depth;
    }
  }
  return best;
}

// Repeated minimum extraction over the filtered entries.
inline std::vector<std::string> oracleQuery(const std::vector<std::tuple<std::string, VAPoint, double>>& entries,
                                            VAPoint target, double minConc, const std::set<std::string>& excluded,
                                            std::size_t maxResults) {
  std::vector<std::tuple<std::string, VAPoint, double>> pool;
  for (const auto& e : entries)
    if (std::get<2>(e) >= minConc && !excluded.count(std::get<0>(e))) pool.push_back(e);
  std::vector<std::string> out;
  while (!pool.empty() && out.size() < maxResults) {
    std::size_t best = 0;
    auto dist = [&](std::size_t i) {
      const VAPoint a = std::get<1>(pool[i]);
      return std::hypot(a.valence - target.valence, a.arousal - target.arousal);
    };
    for (std::size_t i = 1; i < pool.size(); ++i) {
      const double di = dist(i), db = dist(best);
      if (di < db || (di == db && std::get<0>(pool[i]) < std::get<0>(pool[best]))) best = i;
    }
    out.push_back(std::get<0>(pool[best]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

// Study vote counts, typed in by hand: happy, relaxed, sad, angry.
struct VoteRow {
  const char* name;
  int h, r, s, a;
};
inline constexpr VoteRow kVoteRows[] = {
    {"yellow", 6, 0, 1, 0},    {"orange", 3, 0, 0, 1},     {"pink", 3, 1, 0, 1},     {"purple", 3, 1, 1, 0},
    {"green", 4, 3, 0, 0},     {"white", 3, 5, 0, 1},      {"blue", 3, 5, 1, 0},     {"black", 1, 0, 4, 3},
    {"red", 1, 0, 2, 6},       {"brown", 0, 0, 4, 0},      {"circle", 6, 6, 2, 0},   {"triangle", 2, 1, 3, 4},
    {"square", 2, 0, 3, 1},    {"horizontal", 1, 4, 0, 1}, {"vertical", 1, 3, 3, 0}, {"diagonal", 3, 0, 2, 3},
    {"gray", 0, 0, 0, 0},
};

// Closed form: valence = (h + r − s − a) / 2n, arousal = (h − r − s + a) / 2n.
inline VAPoint oracleVoteMean(const VoteRow& row) {
  const int n = row.h + row.r + row.s + row.a;
  if (n == 0) return {0.0, 0.0};
  return {(row.h + row.r - row.s - row.a) / (2.0 * n), (row.h - row.r - row.s + row.a) / (2.0 * n)};
}

}  // namespace testsupport
