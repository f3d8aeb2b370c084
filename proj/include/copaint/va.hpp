#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace copaint {

// A point in valence-arousal space. Both axes live in [-1, 1].
struct VAPoint {
  double valence = 0.0;
  double arousal = 0.0;

  friend bool operator==(const VAPoint&, const VAPoint&) = default;
};

inline VAPoint clamped(VAPoint p) {
  auto c = [](double x) { return std::isfinite(x) ? std::clamp(x, -1.0, 1.0) : 0.0; };
  return {c(p.valence), c(p.arousal)};
}

inline double distance(VAPoint a, VAPoint b) {
  return std::hypot(a.valence - b.valence, a.arousal - b.arousal);
}

// Sum of absolute coordinates; how "extreme" an affect is.
inline double extremity(VAPoint p) { return std::abs(p.valence) + std::abs(p.arousal); }

inline VAPoint lerp(VAPoint from, VAPoint to, double t) {
  return {from.valence + t * (to.valence - from.valence),
          from.arousal + t * (to.arousal - from.arousal)};
}

enum class EmotionCategory { happy, relaxed, sad, angry };

// Declaration order doubles as the tie-break order of categoryOf.
inline constexpr std::array<EmotionCategory, 4> kCategories{
    EmotionCategory::happy, EmotionCategory::relaxed, EmotionCategory::sad,
    EmotionCategory::angry};

inline std::string_view toString(EmotionCategory c) {
  switch (c) {
    case EmotionCategory::happy: return "happy";
    case EmotionCategory::relaxed: return "relaxed";
    case EmotionCategory::sad: return "sad";
    case EmotionCategory::angry: return "angry";
  }
  return "happy";
}

inline std::optional<EmotionCategory> parseCategory(std::string_view s) {
  for (auto c : kCategories)
    if (toString(c) == s) return c;
  return std::nullopt;
}

inline EmotionCategory categoryFromString(std::string_view s) {
  if (auto c = parseCategory(s)) return *c;
  throw InvalidArgument("unknown emotion '" + std::string(s) + "'");
}

// Quadrant centers sit at +-0.5 on both axes.
inline constexpr VAPoint quadrantOf(EmotionCategory c) {
  switch (c) {
    case EmotionCategory::happy: return {0.5, 0.5};
    case EmotionCategory::relaxed: return {0.5, -0.5};
    case EmotionCategory::sad: return {-0.5, -0.5};
    case EmotionCategory::angry: return {-0.5, 0.5};
  }
  return {};
}

inline EmotionCategory categoryOf(VAPoint p) {
  EmotionCategory best = kCategories.front();
  double bestDist = distance(p, quadrantOf(best));
  for (auto c : kCategories) {
    double d = distance(p, quadrantOf(c));
    if (d < bestDist) {
      best = c;
      bestDist = d;
    }
  }
  return best;
}

}  // namespace copaint
