#!/usr/bin/env python3
"""Compute vote-mean affect seeds from the participant disclosure counts.

Each vote for an emotion contributes that emotion's quadrant center; an
element's affect is the mean over its votes. Output is a C++ header that the
library embeds as data and the tests use as a frozen oracle.
"""
import argparse
from fractions import Fraction

CENTERS = {
    "happy": (Fraction(1, 2), Fraction(1, 2)),
    "relaxed": (Fraction(1, 2), Fraction(-1, 2)),
    "sad": (Fraction(-1, 2), Fraction(-1, 2)),
    "angry": (Fraction(-1, 2), Fraction(1, 2)),
}
ORDER = ["happy", "relaxed", "sad", "angry"]

# Abstract elements: (happy, relaxed, sad, angry). "warm colors" and
# "dark colors" are aggregate rows and have no element of their own.
ELEMENT_VOTES = [
    ("yellow", "color", (6, 0, 1, 0)),
    ("orange", "color", (3, 0, 0, 1)),
    ("pink", "color", (3, 1, 0, 1)),
    ("purple", "color", (3, 1, 1, 0)),
    ("green", "color", (4, 3, 0, 0)),
    ("white", "color", (3, 5, 0, 1)),
    ("blue", "color", (3, 5, 1, 0)),
    ("black", "color", (1, 0, 4, 3)),
    ("red", "color", (1, 0, 2, 6)),
    ("brown", "color", (0, 0, 4, 0)),
    ("gray", "color", (0, 0, 0, 0)),
    ("circle", "shape", (6, 6, 2, 0)),
    ("triangle", "shape", (2, 1, 3, 4)),
    ("square", "shape", (2, 0, 3, 1)),
    ("horizontal", "line", (1, 4, 0, 1)),
    ("vertical", "line", (1, 3, 3, 0)),
    ("diagonal", "line", (3, 0, 2, 3)),
]

# Typical symbols, merged across the four emotion columns.
SYMBOL_VOTES = [
    ("activity/sports", (6, 3, 0, 0)),
    ("people/family", (5, 2, 0, 0)),
    ("food-and-drink", (5, 5, 0, 0)),
    ("nature/outdoors", (5, 4, 2, 0)),
    ("activity/traveling", (3, 0, 0, 0)),
    ("activity/music", (2, 3, 0, 0)),
    ("activity/work", (2, 2, 0, 0)),
    ("activity/visual-leisure", (2, 5, 0, 0)),
    ("activity/rest", (0, 2, 0, 0)),
    ("activity/washing", (0, 2, 0, 0)),
    ("life-event/failure", (0, 0, 6, 2)),
    ("social/abusiveness", (0, 0, 4, 5)),
    ("world/global-problems", (0, 0, 4, 0)),
    ("life-event/partings", (0, 0, 2, 0)),
    ("social/loneliness", (0, 0, 2, 0)),
    ("social/injustice", (0, 0, 2, 4)),
    ("social/laziness", (0, 0, 2, 0)),
    ("social/stupidity", (0, 0, 0, 4)),
    ("world/noise-shouting", (0, 0, 0, 2)),
    ("world/traffic", (0, 0, 0, 2)),
]


def vote_mean(counts):
    total = sum(counts)
    if total == 0:
        return Fraction(0), Fraction(0)
    v = sum(n * CENTERS[e][0] for n, e in zip(counts, ORDER)) / total
    a = sum(n * CENTERS[e][1] for n, e in zip(counts, ORDER)) / total
    return v, a


def lit(x):
    return repr(float(x))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    lines = [
        "// Generated by tools/gen_seed_tables.py. Do not edit.",
        "#pragma once",
        "",
        "#include <array>",
        "#include <string_view>",
        "",
        "namespace copaint::data {",
        "",
        "struct VoteRow {",
        "  std::string_view name;",
        "  std::string_view kind;",
        "  std::array<int, 4> votes;  // happy, relaxed, sad, angry",
        "  double valence;",
        "  double arousal;",
        "};",
        "",
        f"inline constexpr std::array<VoteRow, {len(ELEMENT_VOTES)}> kElementVotes{{{{",
    ]
    for name, kind, c in ELEMENT_VOTES:
        v, a = vote_mean(c)
        lines.append(f'    {{"{name}", "{kind}", {{{c[0]}, {c[1]}, {c[2]}, {c[3]}}}, {lit(v)}, {lit(a)}}},')
    lines += ["}};", "",
              f"inline constexpr std::array<VoteRow, {len(SYMBOL_VOTES)}> kSymbolVotes{{{{"]
    for path, c in SYMBOL_VOTES:
        v, a = vote_mean(c)
        lines.append(f'    {{"{path}", "symbol", {{{c[0]}, {c[1]}, {c[2]}, {c[3]}}}, {lit(v)}, {lit(a)}}},')
    lines += ["}};", "", "}  // namespace copaint::data", ""]
    with open(args.out, "w") as f:
        f.write("\n".join(lines))


if __name__ == "__main__":
    main()
