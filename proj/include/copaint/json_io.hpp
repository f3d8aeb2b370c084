#pragma once

#include <json.hpp>

#include <string>

#include "metaphor.hpp"
#include "profile_json.hpp"
#include "sketch.hpp"

namespace copaint {

inline nlohmann::json toJson(const HueAreas& h) {
  nlohmann::json j = nlohmann::json::object();
  for (HueBin b : kHueBins) j[std::string(toString(b))] = h[b];
  j["meanValue"] = h.meanValue;
  return j;
}

inline nlohmann::json toJson(const LineStats& l) {
  return {{"horizontal", l.horizontal},
          {"vertical", l.vertical},
          {"diagonal", l.diagonal},
          {"diagonalFraction", l.diagonalFraction}};
}

inline nlohmann::json toJson(const TurnAnalysis& a) {
  nlohmann::json j;
  j["inferred"] = toJson(a.inferred);
  j["category"] = toString(a.category);
  j["hues"] = toJson(a.hues);
  j["lines"] = toJson(a.lines);
  j["declaredSymbols"] = a.declaredSymbols;
  j["salientSymbol"] = a.salientSymbol ? nlohmann::json(*a.salientSymbol) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json toJson(const Recipe& r) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : r.elements)
    elements.push_back({{"element", toString(e.element)}, {"kind", toString(kindOf(e.element))}, {"weight", e.weight}});
  return {{"elements", elements}, {"paletteSize", r.paletteSize}, {"shapeCount", r.shapeCount}};
}

inline Recipe recipeFromJson(const nlohmann::json& j) {
  Recipe r;
  for (const auto& e : j.at("elements"))
    r.elements.push_back({elementFromString(e.at("element").get<std::string>()), e.at("weight").get<double>()});
  r.paletteSize = j.value("paletteSize", 0);
  r.shapeCount = j.value("shapeCount", 0);
  r.validate();
  return r;
}

inline nlohmann::json toJson(const MetaphorDecision& d) {
  nlohmann::json j;
  j["mode"] = toString(d.mode);
  j["concept"] = d.conceptName ? nlohmann::json(*d.conceptName) : nlohmann::json(nullptr);
  j["recipe"] = d.recipe ? toJson(*d.recipe) : nlohmann::json(nullptr);
  j["predictedAffect"] = toJson(d.predictedAffect);
  j["rationale"] = d.rationale;
  return j;
}

inline MetaphorDecision decisionFromJson(const nlohmann::json& j) {
  MetaphorDecision d;
  d.mode = j.at("mode").get<std::string>() == "representational" ? MetaphorMode::representational : MetaphorMode::abstract;
  if (!j.at("concept").is_null()) d.conceptName = j.at("concept").get<std::string>();
  if (!j.at("recipe").is_null()) d.recipe = recipeFromJson(j.at("recipe"));
  d.predictedAffect = vaFromJson(j.at("predictedAffect"));
  d.rationale = j.at("rationale").get<std::vector<std::string>>();
  return d;
}

inline nlohmann::json toJson(const StrokePlan& plan) {
  nlohmann::json strokes = nlohmann::json::array();
  for (const auto& s : plan.strokes) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : s.points) pts.push_back({p.x, p.y});
    strokes.push_back({{"points", pts}, {"thickness", s.thickness}, {"color", toHex(s.color)}});
  }
  return {{"budget", plan.budget}, {"residualError", plan.residualError}, {"strokes", strokes}};
}

inline StrokePlan strokePlanFromJson(const nlohmann::json& j) {
  StrokePlan plan;
  plan.budget = j.at("budget").get<int>();
  plan.residualError = j.at("residualError").get<double>();
  for (const auto& s : j.at("strokes")) {
    Stroke st;
    for (const auto& p : s.at("points")) st.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    st.thickness = s.at("thickness").get<double>();
    st.color = fromHex(s.at("color").get<std::string>());
    plan.strokes.push_back(std::move(st));
  }
  return plan;
}

inline nlohmann::json toJson(const VectorComposition& comp) {
  nlohmann::json prims = nlohmann::json::array();
  for (const auto& prim : comp.primitives) {
    prims.push_back(std::visit(
        [](const auto& p) -> nlohmann::json {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Disc>)
            return {{"type", "disc"}, {"center", {p.center.x, p.center.y}}, {"radius", p.radius}, {"color", toHex(p.color)}};
          else if constexpr (std::is_same_v<T, Triangle>)
            return {{"type", "triangle"},
                    {"points", {{p.points[0].x, p.points[0].y}, {p.points[1].x, p.points[1].y}, {p.points[2].x, p.points[2].y}}},
                    {"color", toHex(p.color)}};
          else if constexpr (std::is_same_v<T, Rect>)
            return {{"type", "rect"}, {"corner", {p.corner.x, p.corner.y}}, {"width", p.width}, {"height", p.height},
                    {"color", toHex(p.color)}};
          else
            return {{"type", "segment"}, {"p1", {p.p1.x, p.p1.y}}, {"p2", {p.p2.x, p.p2.y}},
                    {"thickness", p.thickness}, {"color", toHex(p.color)}};
        },
        prim));
  }
  return {{"width", comp.width}, {"height", comp.height}, {"primitives", prims}};
}

inline VectorComposition compositionFromJson(const nlohmann::json& j) {
  auto pt = [](const nlohmann::json& a) { return Point2{a.at(0).get<double>(), a.at(1).get<double>()}; };
  VectorComposition comp{j.at("width").get<int>(), j.at("height").get<int>(), {}};
  for (const auto& p : j.at("primitives")) {
    const std::string type = p.at("type").get<std::string>();
    const Rgb color = fromHex(p.at("color").get<std::string>());
    if (type == "disc")
      comp.primitives.push_back(Disc{pt(p.at("center")), p.at("radius").get<double>(), color});
    else if (type == "triangle")
      comp.primitives.push_back(Triangle{{{pt(p.at("points").at(0)), pt(p.at("points").at(1)), pt(p.at("points").at(2))}}, color});
    else if (type == "rect")
      comp.primitives.push_back(Rect{pt(p.at("corner")), p.at("width").get<double>(), p.at("height").get<double>(), color});
    else if (type == "segment")
      comp.primitives.push_back(Segment{pt(p.at("p1")), pt(p.at("p2")), p.at("thickness").get<double>(), color});
    else
      throw ParseError(0, "unknown primitive type '" + type + "'");
  }
  return comp;
}

// Asset library file: {"<slug>": <composition>, ...}
inline AssetLibrary assetsFromJson(const nlohmann::json& j) {
  AssetLibrary lib;
  for (const auto& [slug, comp] : j.items()) lib[slug] = compositionFromJson(comp);
  return lib;
}

inline DisclosureForm disclosureFromJson(const nlohmann::json& j) {
  DisclosureForm form;
  for (const auto& [key, value] : j.items()) {
    if (key == "elements") {
      for (const auto& [name, votes] : value.items())
        for (const auto& v : votes) form.elementVotes[elementFromString(name)].push_back(categoryFromString(v.get<std::string>()));
      continue;
    }
    form.labels[categoryFromString(key)] = value.get<std::vector<std::string>>();
  }
  return form;
}

}  // namespace copaint
