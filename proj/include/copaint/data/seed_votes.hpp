// Generated by tools/gen_seed_tables.py. Do not edit.
#pragma once

#include <array>
#include <string_view>

namespace copaint::data {

struct VoteRow {
  std::string_view name;
  std::string_view kind;
  std::array<int, 4> votes;  // happy, relaxed, sad, angry
  double valence;
  double arousal;
};

inline constexpr std::array<VoteRow, 17> kElementVotes{{
    {"yellow", "color", {6, 0, 1, 0}, 0.35714285714285715, 0.35714285714285715},
    {"orange", "color", {3, 0, 0, 1}, 0.25, 0.5},
    {"pink", "color", {3, 1, 0, 1}, 0.3, 0.3},
    {"purple", "color", {3, 1, 1, 0}, 0.3, 0.1},
    {"green", "color", {4, 3, 0, 0}, 0.5, 0.07142857142857142},
    {"white", "color", {3, 5, 0, 1}, 0.3888888888888889, -0.05555555555555555},
    {"blue", "color", {3, 5, 1, 0}, 0.3888888888888889, -0.16666666666666666},
    {"black", "color", {1, 0, 4, 3}, -0.375, 0.0},
    {"red", "color", {1, 0, 2, 6}, -0.3888888888888889, 0.2777777777777778},
    {"brown", "color", {0, 0, 4, 0}, -0.5, -0.5},
    {"gray", "color", {0, 0, 0, 0}, 0.0, 0.0},
    {"circle", "shape", {6, 6, 2, 0}, 0.35714285714285715, -0.07142857142857142},
    {"triangle", "shape", {2, 1, 3, 4}, -0.2, 0.1},
    {"square", "shape", {2, 0, 3, 1}, -0.16666666666666666, 0.0},
    {"horizontal", "line", {1, 4, 0, 1}, 0.3333333333333333, -0.16666666666666666},
    {"vertical", "line", {1, 3, 3, 0}, 0.07142857142857142, -0.35714285714285715},
    {"diagonal", "line", {3, 0, 2, 3}, -0.125, 0.25},
}};

inline constexpr std::array<VoteRow, 20> kSymbolVotes{{
    {"activity/sports", "symbol", {6, 3, 0, 0}, 0.5, 0.16666666666666666},
    {"people/family", "symbol", {5, 2, 0, 0}, 0.5, 0.21428571428571427},
    {"food-and-drink", "symbol", {5, 5, 0, 0}, 0.5, 0.0},
    {"nature/outdoors", "symbol", {5, 4, 2, 0}, 0.3181818181818182, -0.045454545454545456},
    {"activity/traveling", "symbol", {3, 0, 0, 0}, 0.5, 0.5},
    {"activity/music", "symbol", {2, 3, 0, 0}, 0.5, -0.1},
    {"activity/work", "symbol", {2, 2, 0, 0}, 0.5, 0.0},
    {"activity/visual-leisure", "symbol", {2, 5, 0, 0}, 0.5, -0.21428571428571427},
    {"activity/rest", "symbol", {0, 2, 0, 0}, 0.5, -0.5},
    {"activity/washing", "symbol", {0, 2, 0, 0}, 0.5, -0.5},
    {"life-event/failure", "symbol", {0, 0, 6, 2}, -0.5, -0.25},
    {"social/abusiveness", "symbol", {0, 0, 4, 5}, -0.5, 0.05555555555555555},
    {"world/global-problems", "symbol", {0, 0, 4, 0}, -0.5, -0.5},
    {"life-event/partings", "symbol", {0, 0, 2, 0}, -0.5, -0.5},
    {"social/loneliness", "symbol", {0, 0, 2, 0}, -0.5, -0.5},
    {"social/injustice", "symbol", {0, 0, 2, 4}, -0.5, 0.16666666666666666},
    {"social/laziness", "symbol", {0, 0, 2, 0}, -0.5, -0.5},
    {"social/stupidity", "symbol", {0, 0, 0, 4}, -0.5, 0.5},
    {"world/noise-shouting", "symbol", {0, 0, 0, 2}, -0.5, 0.5},
    {"world/traffic", "symbol", {0, 0, 0, 2}, -0.5, 0.5},
}};

}  // namespace copaint::data
