#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "canvas_analysis.hpp"
#include "data/seed_votes.hpp"
#include "errors.hpp"
#include "va.hpp"

namespace copaint {

enum class ElementKind { color, shape, line };

// Abstract art elements. Colors first, then shapes, then line classes.
enum class Element {
  red, orange, yellow, green, blue, purple, white, black, gray, pink, brown,
  circle, triangle, square,
  horizontal, vertical, diagonal
};

inline constexpr std::size_t kElementCount = 17;

inline constexpr std::array<Element, kElementCount> kElements{
    Element::red,    Element::orange,   Element::yellow, Element::green,      Element::blue,
    Element::purple, Element::white,    Element::black,  Element::gray,       Element::pink,
    Element::brown,  Element::circle,   Element::triangle, Element::square,   Element::horizontal,
    Element::vertical, Element::diagonal};

inline std::string_view toString(Element e) {
  static constexpr std::array<std::string_view, kElementCount> names{
      "red",   "orange", "yellow", "green",  "blue",     "purple",     "white",    "black",   "gray",
      "pink",  "brown",  "circle", "triangle", "square", "horizontal", "vertical", "diagonal"};
  return names[static_cast<std::size_t>(e)];
}

inline std::optional<Element> parseElement(std::string_view name) {
  for (Element e : kElements)
    if (toString(e) == name) return e;
  return std::nullopt;
}

inline Element elementFromString(std::string_view name) {
  if (auto e = parseElement(name)) return *e;
  throw InvalidArgument("unknown element '" + std::string(name) + "'");
}

inline constexpr ElementKind kindOf(Element e) {
  if (e <= Element::brown) return ElementKind::color;
  if (e <= Element::square) return ElementKind::shape;
  return ElementKind::line;
}

inline std::string_view toString(ElementKind k) {
  switch (k) {
    case ElementKind::color: return "color";
    case ElementKind::shape: return "shape";
    case ElementKind::line: return "line";
  }
  return "color";
}

// Gray is affect-neutral and has no element counterpart for inference.
inline std::optional<Element> elementOf(HueBin bin) {
  switch (bin) {
    case HueBin::red: return Element::red;
    case HueBin::orange: return Element::orange;
    case HueBin::yellow: return Element::yellow;
    case HueBin::green: return Element::green;
    case HueBin::blue: return Element::blue;
    case HueBin::purple: return Element::purple;
    case HueBin::white: return Element::white;
    case HueBin::black: return Element::black;
    case HueBin::gray: return std::nullopt;
  }
  return std::nullopt;
}

inline Element elementOf(Orientation o) {
  switch (o) {
    case Orientation::horizontal: return Element::horizontal;
    case Orientation::vertical: return Element::vertical;
    case Orientation::diagonal: return Element::diagonal;
  }
  return Element::horizontal;
}

class ElementAffectTable {
 public:
  const VAPoint& operator[](Element e) const { return values_[static_cast<std::size_t>(e)]; }
  VAPoint& operator[](Element e) { return values_[static_cast<std::size_t>(e)]; }
  friend bool operator==(const ElementAffectTable&, const ElementAffectTable&) = default;

 private:
  std::array<VAPoint, kElementCount> values_{};
};

// Mean of quadrant centers over a category vote histogram
// (happy, relaxed, sad, angry). No votes gives the neutral origin.
inline VAPoint voteMean(const std::array<int, 4>& votes) {
  int total = 0;
  VAPoint sum;
  for (std::size_t i = 0; i < votes.size(); ++i) {
    const VAPoint c = quadrantOf(kCategories[i]);
    sum.valence += votes[i] * c.valence;
    sum.arousal += votes[i] * c.arousal;
    total += votes[i];
  }
  if (total == 0) return {};
  return {sum.valence / total, sum.arousal / total};
}

// Element affects from the participant disclosure vote counts.
inline ElementAffectTable buildGenericTable() {
  ElementAffectTable table;
  for (const auto& row : data::kElementVotes) table[elementFromString(row.name)] = voteMean(row.votes);
  return table;
}

inline const ElementAffectTable& genericTable() {
  static const ElementAffectTable table = buildGenericTable();
  return table;
}

// One element per line: "<name> <valence> <arousal>".
inline std::string formatTable(const ElementAffectTable& table) {
  std::ostringstream out;
  out.precision(17);
  for (Element e : kElements) out << toString(e) << ' ' << table[e].valence << ' ' << table[e].arousal << '\n';
  return out.str();
}

inline ElementAffectTable parseTable(const std::string& text) {
  ElementAffectTable table;
  std::array<bool, kElementCount> seen{};
  std::istringstream in(text);
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string name;
    VAPoint p;
    if (!(fields >> name >> p.valence >> p.arousal)) throw ParseError(lineNo, "expected '<element> <valence> <arousal>'");
    auto e = parseElement(name);
    if (!e) throw ParseError(lineNo, "unknown element '" + name + "'");
    if (p.valence < -1 || p.valence > 1 || p.arousal < -1 || p.arousal > 1)
      throw RangeError("affect of '" + name + "' outside [-1,1]");
    table[*e] = p;
    seen[static_cast<std::size_t>(*e)] = true;
  }
  for (Element e : kElements)
    if (!seen[static_cast<std::size_t>(e)]) throw ParseError(0, "missing element '" + std::string(toString(e)) + "'");
  return table;
}

struct InferenceWeights {
  double intensity = 0.25;
  double diagonal = 0.3;

  void validate() const {
    if (!(intensity >= 0 && intensity <= 1) || !(diagonal >= 0 && diagonal <= 1))
      throw RangeError("inference weights must lie in [0,1]");
  }
};

// Unclamped linear model; inferEmotion clamps it.
inline VAPoint linearAffect(const HueAreas& hues, double diagonalFraction, const ElementAffectTable& table,
                            const InferenceWeights& w) {
  VAPoint sum;
  for (HueBin bin : kHueBins) {
    auto e = elementOf(bin);
    if (!e) continue;
    sum.valence += hues[bin] * table[*e].valence;
    sum.arousal += hues[bin] * table[*e].arousal;
  }
  sum.valence += w.intensity * (2.0 * hues.meanValue - 1.0);
  sum.arousal += w.diagonal * diagonalFraction;
  return sum;
}

inline VAPoint inferEmotion(const HueAreas& hues, const LineStats& lines, const ElementAffectTable& table,
                            const InferenceWeights& w = {}) {
  return clamped(linearAffect(hues, lines.diagonalFraction, table, w));
}

}  // namespace copaint
