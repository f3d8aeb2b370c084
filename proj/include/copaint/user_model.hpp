#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "data/seed_votes.hpp"
#include "emotion_core.hpp"
#include "errors.hpp"
#include "taxonomy.hpp"
#include "va.hpp"

namespace copaint {

struct HistoryEvent {
  std::int64_t timestamp = 0;  // caller-supplied, e.g. unix millis
  std::string event;
  friend bool operator==(const HistoryEvent&, const HistoryEvent&) = default;
};

struct Profile {
  std::string id;
  std::map<std::string, std::string> attributes;
  Taxonomy taxonomy;
  std::map<Element, LayeredAffect> elementOverrides;
  std::set<std::string> taboo;
  std::vector<HistoryEvent> history;

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct UpdateParams {
  double learningRate = 0.5;    // eta, (0, 1]
  double ancestorDecay = 0.5;   // lambda, [0, 1]
  int kNeighbors = 3;
  double stddevPenalty = 0.5;   // beta

  void validate() const {
    if (!(learningRate > 0 && learningRate <= 1)) throw RangeError("learningRate must lie in (0,1]");
    if (!(ancestorDecay >= 0 && ancestorDecay <= 1)) throw RangeError("ancestorDecay must lie in [0,1]");
    if (kNeighbors < 1) throw RangeError("kNeighbors must be >= 1");
    if (!(stddevPenalty >= 0)) throw RangeError("stddevPenalty must be >= 0");
  }
};

struct ResolvedAffect {
  VAPoint affect;
  Layer provenance = Layer::generic;
};

struct ConceptChoice {
  std::string path;
  VAPoint predictedAffect;
  double score = 0.0;
  Layer layerProvenance = Layer::generic;
};

// ---------------------------------------------------------------------------
// Layered resolution

inline bool isTaboo(const Profile& profile, std::string_view path) {
  for (const auto& t : profile.taboo)
    if (taxpath::within(path, t)) return true;
  return false;
}

// known > stereotype > mean of seeded leaves in the subtree.
inline ResolvedAffect effectiveAffect(const Profile& profile, std::string_view path) {
  const TaxonomyNode& n = profile.taxonomy.node(path);
  if (n.explicitAffect) return {n.explicitAffect->affect, n.explicitAffect->layer};
  const LeafSummary s = profile.taxonomy.leafSummary(path);
  if (s.count == 0) throw NoData("no affect data under '" + std::string(path) + "'");
  return {s.mean, Layer::generic};
}

inline std::optional<ResolvedAffect> tryEffectiveAffect(const Profile& profile, std::string_view path) {
  const TaxonomyNode& n = profile.taxonomy.node(path);
  if (n.explicitAffect) return ResolvedAffect{n.explicitAffect->affect, n.explicitAffect->layer};
  const LeafSummary s = profile.taxonomy.leafSummary(path);
  if (s.count == 0) return std::nullopt;
  return ResolvedAffect{s.mean, Layer::generic};
}

inline double subtreeStddev(const Profile& profile, std::string_view path) {
  const LeafSummary s = profile.taxonomy.leafSummary(path);
  if (s.count == 0) throw NoData("no seeded leaves under '" + std::string(path) + "'");
  return s.stddev;
}

inline VAPoint elementAffect(const Profile& profile, Element e) {
  if (auto it = profile.elementOverrides.find(e); it != profile.elementOverrides.end()) return it->second.affect;
  return genericTable()[e];
}

inline ElementAffectTable resolvedTable(const Profile& profile) {
  ElementAffectTable table = genericTable();
  for (const auto& [e, v] : profile.elementOverrides) table[e] = v.affect;
  return table;
}

// ---------------------------------------------------------------------------
// Estimation and adaptation

// Hop-distance kNN over seeded leaves, weighted by 1/(1+hops).
inline VAPoint estimateLeaf(const Profile& profile, std::string_view newPath, int k) {
  if (k < 1) throw RangeError("k must be >= 1");
  taxpath::validate(newPath);
  const std::string parent = taxpath::parent(newPath);
  if (!profile.taxonomy.contains(parent)) throw UnknownPath("parent of '" + std::string(newPath) + "' does not exist");

  std::vector<std::pair<std::size_t, const TaxonomyNode*>> seeded;
  for (const auto& [path, n] : profile.taxonomy.nodes())
    if (n.isLeaf() && n.leafAffect && path != newPath) seeded.emplace_back(taxpath::hops(newPath, path), &n);

  if (seeded.empty()) {
    for (std::string p = parent;; p = taxpath::parent(p)) {
      if (auto r = tryEffectiveAffect(profile, p)) return r->affect;
      if (p.empty()) break;
    }
    throw NoData("taxonomy has no data to estimate '" + std::string(newPath) + "'");
  }
  // nodes() is path-ordered, so stable sort on hops leaves ties alphabetical
  std::stable_sort(seeded.begin(), seeded.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), seeded.size());
  VAPoint sum;
  double wsum = 0.0;
  for (std::size_t i = 0; i < take; ++i) {
    const double w = 1.0 / (1.0 + static_cast<double>(seeded[i].first));
    sum.valence += w * seeded[i].second->leafAffect->valence;
    sum.arousal += w * seeded[i].second->leafAffect->arousal;
    wsum += w;
  }
  return {sum.valence / wsum, sum.arousal / wsum};
}

namespace detail {

inline std::string fmtPoint(VAPoint p) {
  std::ostringstream s;
  s.precision(4);
  s << '(' << p.valence << ',' << p.arousal << ')';
  return s.str();
}

}  // namespace detail

// Moves the node toward `reaction` by eta and every ancestor at hop
// distance d by eta*lambda^d. All updates land in the known layer. A missing
// node is first created with a kNN-estimated seed.
inline Profile applyReaction(Profile profile, std::string_view path, VAPoint reaction, const UpdateParams& params,
                             std::int64_t timestamp = 0) {
  params.validate();
  reaction = clamped(reaction);
  if (!profile.taxonomy.contains(path)) {
    const VAPoint seed = estimateLeaf(profile, path, params.kNeighbors);
    profile.taxonomy.addLeaf(path, seed);
  }

  std::vector<std::pair<std::string, VAPoint>> chain;
  std::optional<VAPoint> below;
  for (std::string p(path); !p.empty(); p = taxpath::parent(p)) {
    auto r = tryEffectiveAffect(profile, p);
    VAPoint start = r ? r->affect : below.value_or(reaction);
    chain.emplace_back(p, start);
    below = start;
  }
  double step = params.learningRate;
  for (const auto& [p, start] : chain) {
    const VAPoint updated = clamped(lerp(start, reaction, step));
    profile.taxonomy.node(p).explicitAffect = LayeredAffect{updated, Layer::known};
    step *= params.ancestorDecay;
  }
  profile.history.push_back({timestamp, "reaction " + std::string(path) + " " + detail::fmtPoint(reaction)});
  return profile;
}

// Recipe feedback path: each element moves toward the reaction by eta.
inline Profile applyElementReaction(Profile profile, std::span<const Element> elements, VAPoint reaction,
                                    const UpdateParams& params, std::int64_t timestamp = 0) {
  params.validate();
  reaction = clamped(reaction);
  std::string names;
  for (Element e : elements) {
    const VAPoint start = elementAffect(profile, e);
    profile.elementOverrides[e] = {clamped(lerp(start, reaction, params.learningRate)), Layer::known};
    names += (names.empty() ? "" : ",") + std::string(toString(e));
  }
  profile.history.push_back({timestamp, "element-reaction " + names + " " + detail::fmtPoint(reaction)});
  return profile;
}

// ---------------------------------------------------------------------------
// Selection

struct ScoredConcept {
  std::string path;
  ResolvedAffect affect;
  double distance = 0.0;
  double stddev = 0.0;
  double score = 0.0;
};

inline constexpr double kScoreTieEpsilon = 1e-12;

// Strict weak order: score, then shallower, then path.
inline bool betterCandidate(double scoreA, std::string_view pathA, double scoreB, std::string_view pathB) {
  if (std::abs(scoreA - scoreB) > kScoreTieEpsilon) return scoreA < scoreB;
  const auto da = taxpath::depth(pathA), db = taxpath::depth(pathB);
  if (da != db) return da < db;
  return pathA < pathB;
}

// Every eligible node with its score. Nodes without seeded leaves but with an
// explicit affect are scored with zero spread.
inline std::vector<ScoredConcept> scoreConcepts(const Profile& profile, VAPoint target,
                                                const std::set<std::string>& excluded, const UpdateParams& params) {
  std::vector<ScoredConcept> out;
  for (const auto& [path, n] : profile.taxonomy.nodes()) {
    if (path.empty() || excluded.contains(path) || isTaboo(profile, path)) continue;
    const LeafSummary s = profile.taxonomy.leafSummary(path);
    ScoredConcept c;
    c.path = path;
    if (n.explicitAffect)
      c.affect = {n.explicitAffect->affect, n.explicitAffect->layer};
    else if (s.count > 0)
      c.affect = {s.mean, Layer::generic};
    else
      continue;
    c.stddev = s.count > 0 ? s.stddev : 0.0;
    c.distance = distance(target, c.affect.affect);
    c.score = c.distance + params.stddevPenalty * c.stddev;
    out.push_back(std::move(c));
  }
  return out;
}

inline ConceptChoice selectConcept(const Profile& profile, VAPoint target, const std::set<std::string>& excluded,
                                   const UpdateParams& params) {
  params.validate();
  const auto scored = scoreConcepts(profile, target, excluded, params);
  if (scored.empty()) throw NoCandidate("no eligible concept in profile '" + profile.id + "'");
  const ScoredConcept* best = &scored.front();
  for (const auto& c : scored)
    if (betterCandidate(c.score, c.path, best->score, best->path)) best = &c;
  return {best->path, best->affect.affect, best->score, best->affect.provenance};
}

// Minimax over a group: a concept must be eligible and non-taboo for every
// member; its score is the worst member score.
inline ConceptChoice blendGroup(std::span<const Profile> profiles, VAPoint target,
                                const std::set<std::string>& excluded, const UpdateParams& params) {
  params.validate();
  if (profiles.empty()) throw InvalidArgument("blendGroup needs at least one profile");
  std::map<std::string, std::pair<int, ConceptChoice>> merged;
  for (const Profile& p : profiles) {
    for (const auto& c : scoreConcepts(p, target, excluded, params)) {
      auto [it, fresh] = merged.try_emplace(c.path, 0, ConceptChoice{c.path, c.affect.affect, c.score, c.affect.provenance});
      ++it->second.first;
      if (!fresh && c.score > it->second.second.score)
        it->second.second = {c.path, c.affect.affect, c.score, c.affect.provenance};
    }
  }
  const ConceptChoice* best = nullptr;
  for (const auto& [path, entry] : merged) {
    if (entry.first != static_cast<int>(profiles.size())) continue;
    bool tabooSomewhere = false;
    for (const Profile& p : profiles) tabooSomewhere = tabooSomewhere || isTaboo(p, path);
    if (tabooSomewhere) continue;
    if (!best || betterCandidate(entry.second.score, path, best->score, best->path)) best = &entry.second;
  }
  if (!best) throw NoCandidate("no concept is eligible for every group member");
  return *best;
}

// ---------------------------------------------------------------------------
// Disclosure

struct DisclosureForm {
  std::map<EmotionCategory, std::vector<std::string>> labels;
  std::map<Element, std::vector<EmotionCategory>> elementVotes;
};

// Lowercase, runs of non-alphanumerics collapse to '-', trimmed.
inline std::string slugify(std::string_view label) {
  std::string out;
  bool dash = false;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      if (dash && !out.empty()) out += '-';
      out += static_cast<char>(std::tolower(c));
      dash = false;
    } else {
      dash = true;
    }
  }
  return out;
}

inline const std::map<std::string, std::string>& disclosureSynonyms() {
  static const std::map<std::string, std::string> table{
      {"puppy", "dog"},      {"doggy", "dog"},       {"kitten", "cat"},        {"kitty", "cat"},
      {"gift", "presents"},  {"gifts", "presents"},  {"present", "presents"},  {"stream", "brook"},
      {"creek", "brook"},    {"woods", "forest"},    {"trees", "forest"},      {"cemetery", "grave"},
      {"tomb", "grave"},     {"flowers", "flower"},  {"sunshine", "sun"},      {"rainy", "rain"},
      {"food", "food-and-drink"}, {"drink", "food-and-drink"}, {"exercise", "sports"},
      {"travel", "traveling"}, {"travelling", "traveling"}, {"shouting", "noise-shouting"},
      {"noise", "noise-shouting"}, {"weapon", "gun"},  {"guns", "gun"},          {"snakes", "snake"}};
  return table;
}

inline std::vector<std::string> slugCandidates(const std::string& slug) {
  std::vector<std::string> out{slug};
  if (auto it = disclosureSynonyms().find(slug); it != disclosureSynonyms().end()) out.push_back(it->second);
  if (slug.size() > 3 && slug.ends_with("es")) out.push_back(slug.substr(0, slug.size() - 2));
  if (slug.size() > 2 && slug.ends_with('s')) out.push_back(slug.substr(0, slug.size() - 1));
  return out;
}

inline constexpr std::string_view kDisclosedRoot = "disclosed";

// Existing non-disclosed node whose full path or last segment matches; the
// shallowest (then alphabetically first) wins.
inline std::optional<std::string> matchLabel(const Profile& profile, const std::string& slug) {
  for (const std::string& cand : slugCandidates(slug)) {
    std::optional<std::string> best;
    for (const auto& [path, n] : profile.taxonomy.nodes()) {
      if (path.empty() || taxpath::within(path, kDisclosedRoot)) continue;
      if (path != cand && taxpath::leafName(path) != cand) continue;
      if (!best || betterCandidate(0, path, 0, *best)) best = path;
    }
    if (best) return best;
  }
  return std::nullopt;
}

// Matched labels receive known-layer affect (vote mean when a label appears
// under several emotions). Unmatched labels become leaves under
// disclosed/<emotion>/<slug>. Element votes become known element overrides.
inline Profile ingestDisclosure(Profile profile, const DisclosureForm& form, std::int64_t timestamp = 0) {
  const Profile before = profile;
  std::map<std::string, std::array<int, 4>> matchedVotes;
  for (const auto& [emotion, labels] : form.labels) {
    for (const std::string& label : labels) {
      const std::string slug = slugify(label);
      if (slug.empty()) continue;
      if (auto path = matchLabel(profile, slug)) {
        ++matchedVotes[*path][static_cast<std::size_t>(emotion)];
      } else {
        const std::string leaf =
            taxpath::join(taxpath::join(kDisclosedRoot, toString(emotion)), slug);
        profile.taxonomy.addLeaf(leaf, quadrantOf(emotion));
      }
    }
  }
  for (const auto& [path, votes] : matchedVotes)
    profile.taxonomy.node(path).explicitAffect = LayeredAffect{voteMean(votes), Layer::known};

  for (const auto& [element, votes] : form.elementVotes) {
    if (votes.empty()) continue;
    std::array<int, 4> hist{};
    for (EmotionCategory c : votes) ++hist[static_cast<std::size_t>(c)];
    profile.elementOverrides[element] = {voteMean(hist), Layer::known};
  }
  if (!(profile.taxonomy == before.taxonomy && profile.elementOverrides == before.elementOverrides))
    profile.history.push_back({timestamp, "disclosure"});
  return profile;
}

// ---------------------------------------------------------------------------
// Stereotype layer

struct StereotypeRule {
  std::string attribute;
  std::string value;
  std::string target;  // "color/<name>", "shape/<name>", "line/<name>" or a taxonomy path
  VAPoint shift;
};

inline std::optional<Element> elementTarget(std::string_view target) {
  for (std::string_view prefix : {"color/", "shape/", "line/"}) {
    if (!target.starts_with(prefix)) continue;
    auto e = parseElement(target.substr(prefix.size()));
    if (e && toString(kindOf(*e)) == prefix.substr(0, prefix.size() - 1)) return e;
  }
  return std::nullopt;
}

// Lines: `<attribute>=<value> <target> <dValence> <dArousal>`; '#' starts a comment.
inline std::vector<StereotypeRule> parseStereotypeRules(std::string_view text) {
  std::vector<StereotypeRule> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string predicate;
    if (!(fields >> predicate)) continue;
    StereotypeRule r;
    const auto eq = predicate.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(lineNo, "expected '<attribute>=<value>'");
    r.attribute = predicate.substr(0, eq);
    r.value = predicate.substr(eq + 1);
    if (!(fields >> r.target >> r.shift.valence >> r.shift.arousal))
      throw ParseError(lineNo, "expected '<target> <dValence> <dArousal>'");
    rules.push_back(std::move(r));
  }
  return rules;
}

// Rebuilds the stereotype layer from the rules whose predicate matches the
// profile's attributes. Known entries are never touched.
inline Profile applyStereotypes(Profile profile, std::span<const StereotypeRule> rules) {
  for (auto it = profile.elementOverrides.begin(); it != profile.elementOverrides.end();)
    it = it->second.layer == Layer::stereotype ? profile.elementOverrides.erase(it) : std::next(it);
  std::vector<std::string> stereotyped;
  for (const auto& [path, n] : profile.taxonomy.nodes())
    if (n.explicitAffect && n.explicitAffect->layer == Layer::stereotype) stereotyped.push_back(path);
  for (const auto& p : stereotyped) profile.taxonomy.node(p).explicitAffect.reset();

  for (const StereotypeRule& r : rules) {
    auto attr = profile.attributes.find(r.attribute);
    if (attr == profile.attributes.end() || attr->second != r.value) continue;
    auto shifted = [&](VAPoint base) {
      return clamped({base.valence + r.shift.valence, base.arousal + r.shift.arousal});
    };
    if (auto e = elementTarget(r.target)) {
      auto it = profile.elementOverrides.find(*e);
      if (it != profile.elementOverrides.end() && it->second.layer == Layer::known) continue;
      const VAPoint value = shifted(elementAffect(profile, *e));
      profile.elementOverrides[*e] = {value, Layer::stereotype};
    } else if (profile.taxonomy.contains(r.target)) {
      auto& node = profile.taxonomy.node(r.target);
      if (node.explicitAffect && node.explicitAffect->layer == Layer::known) continue;
      auto base = tryEffectiveAffect(profile, r.target);
      if (!base) continue;
      node.explicitAffect = LayeredAffect{shifted(base->affect), Layer::stereotype};
    }
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Demo content

// Illustrative rules only; not derived from any population data.
inline constexpr std::string_view kDemoStereotypeRules = R"(# demo stereotype rules (non-normative)
ageBand=senior color/blue 0.1 0
ageBand=child object/gun -0.2 0.1
)";

// Hand-assigned demo leaves for symbols that have bundled sketch assets.
struct DemoLeaf {
  std::string_view path;
  VAPoint affect;
};

inline constexpr std::array<DemoLeaf, 14> kDemoAssetLeaves{{
    {"nature/forest", {0.4, -0.3}},
    {"nature/brook", {0.45, -0.45}},
    {"nature/flower", {0.6, 0.1}},
    {"nature/sun", {0.6, 0.35}},
    {"nature/rain", {-0.3, -0.3}},
    {"object/balloon", {0.5, 0.5}},
    {"object/presents", {0.55, 0.45}},
    {"object/skull", {-0.8, 0.4}},
    {"object/grave", {-0.6, -0.4}},
    {"object/gun", {-0.6, 0.6}},
    {"animal/dog", {0.55, 0.3}},
    {"animal/cat", {0.4, -0.1}},
    {"animal/snake", {-0.4, 0.55}},
    {"object/candle", {0.35, -0.4}},
}};

// Demo taxonomy: typical disclosed symbols seeded with their vote means, plus
// the asset-backed demo leaves above.
inline Taxonomy demoTaxonomy() {
  Taxonomy t;
  for (const auto& row : data::kSymbolVotes) t.addLeaf(row.name, voteMean(row.votes));
  for (const auto& leaf : kDemoAssetLeaves) t.addLeaf(leaf.path, leaf.affect);
  return t;
}

inline Profile demoProfile(std::string id, std::map<std::string, std::string> attributes = {}) {
  Profile p;
  p.id = std::move(id);
  p.attributes = std::move(attributes);
  p.taxonomy = demoTaxonomy();
  const auto rules = parseStereotypeRules(kDemoStereotypeRules);
  return applyStereotypes(std::move(p), rules);
}

}  // namespace copaint
