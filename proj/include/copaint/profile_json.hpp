#pragma once

#include <json.hpp>

#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "user_model.hpp"

namespace copaint {

inline constexpr int kProfileSchemaVersion = 1;

inline nlohmann::json toJson(VAPoint p) { return {{"valence", p.valence}, {"arousal", p.arousal}}; }

inline VAPoint vaFromJson(const nlohmann::json& j) {
  VAPoint p{j.at("valence").get<double>(), j.at("arousal").get<double>()};
  if (p.valence < -1 || p.valence > 1 || p.arousal < -1 || p.arousal > 1)
    throw RangeError("affect value outside [-1,1]");
  return p;
}

namespace detail {

inline nlohmann::json nodeToJson(const Taxonomy& t, const TaxonomyNode& n) {
  nlohmann::json j;
  j["path"] = n.path;
  if (n.explicitAffect) {
    j["affect"] = toJson(n.explicitAffect->affect);
    j["layer"] = toString(n.explicitAffect->layer);
  }
  if (n.leafAffect) j["leafAffect"] = toJson(*n.leafAffect);
  j["children"] = nlohmann::json::array();
  for (const auto& c : n.children) j["children"].push_back(nodeToJson(t, t.node(c)));
  return j;
}

inline void warnUnknown(const nlohmann::json& j, std::initializer_list<std::string_view> known, std::string_view where,
                        std::vector<std::string>* warnings) {
  if (!warnings) return;
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) warnings->push_back("ignoring unknown field '" + key + "' in " + std::string(where));
  }
}

inline void nodeFromJson(const nlohmann::json& j, Taxonomy& t, std::vector<std::string>* warnings) {
  warnUnknown(j, {"path", "affect", "layer", "leafAffect", "children"}, "taxonomy node", warnings);
  const std::string path = j.at("path").get<std::string>();
  if (!path.empty()) {
    TaxonomyNode& n = t.ensure(path);
    if (j.contains("affect")) {
      const Layer layer = layerFromString(j.at("layer").get<std::string>());
      if (layer == Layer::generic) throw ParseError(0, "explicit affect of '" + path + "' cannot be generic");
      n.explicitAffect = LayeredAffect{vaFromJson(j.at("affect")), layer};
    }
  }
  if (j.contains("children"))
    for (const auto& c : j.at("children")) {
      const std::string childPath = c.at("path").get<std::string>();
      if (taxpath::parent(childPath) != path) throw ParseError(0, "node '" + childPath + "' is not a child of '" + path + "'");
      nodeFromJson(c, t, warnings);
    }
  // leaf affects last so that children are attached first
  if (!path.empty() && j.contains("leafAffect")) {
    TaxonomyNode& n = t.node(path);
    if (!n.isLeaf()) throw ParseError(0, "leafAffect on inner node '" + path + "'");
    n.leafAffect = vaFromJson(j.at("leafAffect"));
  }
}

}  // namespace detail

inline nlohmann::json profileToJson(const Profile& p) {
  nlohmann::json j;
  j["version"] = kProfileSchemaVersion;
  j["id"] = p.id;
  j["attributes"] = p.attributes;
  j["elementOverrides"] = nlohmann::json::object();
  for (const auto& [e, v] : p.elementOverrides) {
    auto entry = toJson(v.affect);
    entry["layer"] = toString(v.layer);
    j["elementOverrides"][std::string(toString(e))] = entry;
  }
  j["taxonomy"] = detail::nodeToJson(p.taxonomy, p.taxonomy.node(""));
  j["taboo"] = p.taboo;
  j["history"] = nlohmann::json::array();
  for (const auto& h : p.history) j["history"].push_back({{"timestamp", h.timestamp}, {"event", h.event}});
  return j;
}

inline std::string saveProfile(const Profile& p) { return profileToJson(p).dump(2); }

inline Profile profileFromJson(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr) {
  if (!j.is_object()) throw ParseError(0, "profile must be a JSON object");
  if (!j.contains("version")) throw SchemaVersionMismatch("profile has no version field");
  if (!j.at("version").is_number_integer() || j.at("version").get<int>() != kProfileSchemaVersion)
    throw SchemaVersionMismatch("unsupported profile version " + j.at("version").dump());
  detail::warnUnknown(j, {"version", "id", "attributes", "elementOverrides", "taxonomy", "taboo", "history"}, "profile",
                      warnings);
  try {
    Profile p;
    p.id = j.at("id").get<std::string>();
    if (j.contains("attributes")) p.attributes = j.at("attributes").get<std::map<std::string, std::string>>();
    if (j.contains("elementOverrides"))
      for (const auto& [name, v] : j.at("elementOverrides").items()) {
        const Layer layer = v.contains("layer") ? layerFromString(v.at("layer").get<std::string>()) : Layer::known;
        p.elementOverrides[elementFromString(name)] = {vaFromJson(v), layer};
      }
    if (j.contains("taxonomy")) detail::nodeFromJson(j.at("taxonomy"), p.taxonomy, warnings);
    if (j.contains("taboo")) p.taboo = j.at("taboo").get<std::set<std::string>>();
    for (const auto& t : p.taboo)
      if (!p.taxonomy.contains(t)) throw ParseError(0, "taboo path '" + t + "' not in taxonomy");
    if (j.contains("history"))
      for (const auto& h : j.at("history"))
        p.history.push_back({h.at("timestamp").get<std::int64_t>(), h.at("event").get<std::string>()});
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
}

inline Profile loadProfile(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, e.what());
  }
  return profileFromJson(j, warnings);
}

}  // namespace copaint
