#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "canvas_analysis.hpp"
#include "emotion_core.hpp"
#include "lexicon.hpp"
#include "user_model.hpp"

namespace copaint {

struct RecipeElement {
  Element element;
  double weight = 0.0;  // (0, 1]
  friend bool operator==(const RecipeElement&, const RecipeElement&) = default;
};

struct Recipe {
  std::vector<RecipeElement> elements;
  int paletteSize = 0;  // <= 4
  int shapeCount = 0;   // <= 6

  void validate() const {
    if (elements.empty()) throw InvalidArgument("recipe has no elements");
    double sum = 0.0;
    bool hasColor = false;
    for (const auto& e : elements) {
      if (!(e.weight > 0.0 && e.weight <= 1.0)) throw InvalidArgument("recipe weight outside (0,1]");
      sum += e.weight;
      hasColor = hasColor || kindOf(e.element) == ElementKind::color;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("recipe weights do not sum to 1");
    if (!hasColor) throw InvalidArgument("recipe needs at least one color");
    if (paletteSize > 4 || shapeCount > 6 || paletteSize < 0 || shapeCount < 0)
      throw InvalidArgument("recipe palette/shape limits exceeded");
  }

  bool contains(Element e) const {
    return std::any_of(elements.begin(), elements.end(), [e](const RecipeElement& r) { return r.element == e; });
  }

  // Stable identity for the novelty history, e.g. "recipe:red+black+diagonal".
  std::string key() const {
    std::string k = "recipe:";
    for (std::size_t i = 0; i < elements.size(); ++i) k += (i ? "+" : "") + std::string(toString(elements[i].element));
    return k;
  }

  friend bool operator==(const Recipe&, const Recipe&) = default;
};

struct TurnAnalysis {
  VAPoint inferred;
  EmotionCategory category = EmotionCategory::happy;
  HueAreas hues;
  LineStats lines;
  std::vector<std::string> declaredSymbols;
  std::optional<std::string> salientSymbol;
};

// Bounded FIFO of what the engine painted recently.
class TurnHistory {
 public:
  explicit TurnHistory(std::size_t capacity = 5) : capacity_(capacity) {}

  void push(std::string item) {
    if (capacity_ == 0) return;
    recent_.push_back(std::move(item));
    while (recent_.size() > capacity_) recent_.pop_front();
  }
  bool contains(std::string_view item) const {
    return std::find(recent_.begin(), recent_.end(), item) != recent_.end();
  }
  std::size_t capacity() const { return capacity_; }
  const std::deque<std::string>& recent() const { return recent_; }

 private:
  std::size_t capacity_;
  std::deque<std::string> recent_;
};

enum class MetaphorMode { representational, abstract };

inline std::string_view toString(MetaphorMode m) {
  return m == MetaphorMode::representational ? "representational" : "abstract";
}

struct MetaphorDecision {
  MetaphorMode mode = MetaphorMode::abstract;
  std::optional<std::string> conceptName;  // taxonomy path or lexicon word
  std::optional<Recipe> recipe;
  VAPoint predictedAffect;
  std::vector<std::string> rationale;
};

struct MetaphorConfig {
  UpdateParams params;
  double minConcreteness = 3.5;
  int paletteSize = 4;
  int shapeCount = 6;
  int maxShapeElements = 2;
  double weightStep = 0.05;
};

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string fmtVA(VAPoint p) { return "(" + fmt3(p.valence) + ", " + fmt3(p.arousal) + ")"; }

inline std::string joinList(const auto& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + std::string(s);
  return out.empty() ? "none" : out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Turn analysis

// Canvas inference under the profile's element overrides, plus the most
// emotionally extreme declared symbol.
inline TurnAnalysis analyzeTurn(const Raster& raster, std::vector<std::string> declaredSymbols, const Profile& profile,
                                const InferenceWeights& weights = {}) {
  weights.validate();
  TurnAnalysis a;
  a.hues = hueHistogram(raster);
  a.lines = detectLines(raster);
  a.inferred = inferEmotion(a.hues, a.lines, resolvedTable(profile), weights);
  a.category = categoryOf(a.inferred);
  double bestExtremity = -1.0;
  for (const auto& sym : declaredSymbols) {
    if (!profile.taxonomy.contains(sym)) continue;
    auto r = tryEffectiveAffect(profile, sym);
    if (!r) continue;
    const double x = extremity(r->affect);
    if (x > bestExtremity) {
      bestExtremity = x;
      a.salientSymbol = sym;
    }
  }
  a.declaredSymbols = std::move(declaredSymbols);
  return a;
}

// ---------------------------------------------------------------------------
// Abstract recipes

namespace detail {

inline VAPoint mixture(std::span<const VAPoint> affects, std::span<const int> units, int total) {
  VAPoint m;
  for (std::size_t i = 0; i < affects.size(); ++i) {
    m.valence += units[i] * affects[i].valence;
    m.arousal += units[i] * affects[i].arousal;
  }
  return {m.valence / total, m.arousal / total};
}

// Coordinate descent on the weight simplex in `step` increments: move one
// increment between two elements while that reduces the distance. Every
// element keeps at least one increment.
inline std::vector<int> optimizeUnits(std::span<const VAPoint> affects, VAPoint target, int total) {
  const std::size_t n = affects.size();
  std::vector<int> units(n, total / static_cast<int>(n));
  for (std::size_t i = 0; i < static_cast<std::size_t>(total) % n; ++i) ++units[i];
  double current = distance(mixture(affects, units, total), target);
  for (;;) {
    double best = current;
    std::size_t from = n, to = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (units[i] < 2) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        --units[i];
        ++units[j];
        const double d = distance(mixture(affects, units, total), target);
        ++units[i];
        --units[j];
        if (d < best - 1e-12) {
          best = d;
          from = i;
          to = j;
        }
      }
    }
    if (from == n) break;
    --units[from];
    ++units[to];
    current = best;
  }
  return units;
}

}  // namespace detail

// Greedy element selection: the first pick is a color, then colors fill up to
// paletteSize and shape/line elements up to maxShapeElements, each pick being
// the element whose addition (after weight re-optimization) lands closest to
// the target. Stops early once the target is matched exactly.
inline Recipe buildAbstractRecipe(VAPoint target, const Profile& profile, const MetaphorConfig& config = {}) {
  if (config.paletteSize < 1 || config.paletteSize > 4) throw RangeError("paletteSize must lie in [1,4]");
  if (config.maxShapeElements < 0) throw RangeError("maxShapeElements must be >= 0");
  const int total = static_cast<int>(std::lround(1.0 / config.weightStep));
  if (total < 1 || std::abs(total * config.weightStep - 1.0) > 1e-9) throw RangeError("weightStep must divide 1");

  std::vector<Element> byName(kElements.begin(), kElements.end());
  std::sort(byName.begin(), byName.end(), [](Element a, Element b) { return toString(a) < toString(b); });

  std::vector<Element> chosen;
  std::vector<VAPoint> affects;
  std::vector<int> units;
  int colors = 0, shapes = 0;
  for (;;) {
    std::optional<Element> pick;
    std::vector<int> pickUnits;
    double pickDist = 0.0;
    for (Element e : byName) {
      if (std::find(chosen.begin(), chosen.end(), e) != chosen.end()) continue;
      const bool isColor = kindOf(e) == ElementKind::color;
      if (chosen.empty() && !isColor) continue;
      if (isColor ? colors >= config.paletteSize : shapes >= config.maxShapeElements) continue;
      if (static_cast<int>(chosen.size()) + 1 > total) continue;
      auto trial = affects;
      trial.push_back(elementAffect(profile, e));
      auto u = detail::optimizeUnits(trial, target, total);
      const double d = distance(detail::mixture(trial, u, total), target);
      if (!pick || d < pickDist - 1e-12) {
        pick = e;
        pickUnits = std::move(u);
        pickDist = d;
      }
    }
    if (!pick) break;
    chosen.push_back(*pick);
    affects.push_back(elementAffect(profile, *pick));
    units = std::move(pickUnits);
    (kindOf(*pick) == ElementKind::color ? colors : shapes)++;
    if (pickDist <= 1e-9) break;
  }

  Recipe r;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    r.elements.push_back({chosen[i], static_cast<double>(units[i]) / total});
  r.paletteSize = colors;
  r.shapeCount = shapes > 0 ? config.shapeCount : 0;
  return r;
}

inline VAPoint recipeAffect(const Recipe& recipe, const Profile& profile) {
  recipe.validate();
  VAPoint m;
  for (const auto& e : recipe.elements) {
    const VAPoint a = elementAffect(profile, e.element);
    m.valence += e.weight * a.valence;
    m.arousal += e.weight * a.arousal;
  }
  return m;
}

inline VAPoint predictAffect(const MetaphorDecision& decision, const Profile& profile,
                             const Lexicon& lexicon = demoLexicon()) {
  if (decision.mode == MetaphorMode::abstract) {
    if (!decision.recipe) throw InvalidArgument("abstract decision without a recipe");
    return recipeAffect(*decision.recipe, profile);
  }
  if (!decision.conceptName) throw InvalidArgument("representational decision without a concept");
  if (profile.taxonomy.contains(*decision.conceptName)) return effectiveAffect(profile, *decision.conceptName).affect;
  if (const LexiconEntry* e = lexicon.find(*decision.conceptName)) return e->affect;
  throw UnknownPath("concept '" + *decision.conceptName + "' is neither in the taxonomy nor the lexicon");
}

// ---------------------------------------------------------------------------
// Metaphor choice

// Representational first (personal taxonomy, then lexicon), abstract recipe
// as the fallback that always succeeds. Declared symbols and their subtrees
// and recently painted concepts are excluded.
inline MetaphorDecision chooseMetaphor(const TurnAnalysis& analysis, std::span<const Profile> profiles,
                                       const Lexicon& lexicon, const TurnHistory& history,
                                       const MetaphorConfig& config = {}) {
  using detail::fmt3;
  using detail::fmtVA;
  if (profiles.empty()) throw InvalidArgument("chooseMetaphor needs at least one profile");
  const Profile& primary = profiles.front();
  MetaphorDecision d;
  auto& why = d.rationale;

  {
    std::vector<std::string> hues;
    for (HueBin b : kHueBins)
      if (analysis.hues[b] > 0) hues.push_back(std::string(toString(b)) + "=" + fmt3(analysis.hues[b]));
    why.push_back("detected hues: " + detail::joinList(hues) + "; mean value " + fmt3(analysis.hues.meanValue));
    why.push_back("detected lines: horizontal=" + std::to_string(analysis.lines.horizontal) +
                  " vertical=" + std::to_string(analysis.lines.vertical) +
                  " diagonal=" + std::to_string(analysis.lines.diagonal) + " (diagonal fraction " +
                  fmt3(analysis.lines.diagonalFraction) + ")");
  }
  why.push_back("inferred emotion " + fmtVA(analysis.inferred) + " -> " + std::string(toString(analysis.category)));
  why.push_back("declared symbols: " + detail::joinList(analysis.declaredSymbols) +
                (analysis.salientSymbol ? "; most salient: " + *analysis.salientSymbol : ""));

  // Exclusions: declared symbols with their subtrees, then history.
  std::set<std::string> excluded;
  for (const Profile& p : profiles)
    for (const auto& sym : analysis.declaredSymbols) {
      if (!p.taxonomy.contains(sym)) {
        excluded.insert(sym);
        continue;
      }
      p.taxonomy.forEachInSubtree(sym, [&](const TaxonomyNode& n) { excluded.insert(n.path); });
    }
  if (!analysis.declaredSymbols.empty())
    why.push_back("excluded declared symbols and their subtrees (" + std::to_string(excluded.size()) + " nodes)");
  std::vector<std::string> recent;
  for (const auto& h : history.recent())
    if (!h.starts_with("recipe:")) {
      excluded.insert(h);
      recent.push_back(h);
    }
  if (!recent.empty()) why.push_back("excluded recently painted: " + detail::joinList(recent));

  std::set<std::string> taboo;
  for (const Profile& p : profiles) taboo.insert(p.taboo.begin(), p.taboo.end());
  if (!taboo.empty()) why.push_back("taboo subtrees filtered: " + detail::joinList(taboo));

  const VAPoint target = analysis.inferred;
  // 1. personal taxonomy
  try {
    const auto scored = scoreConcepts(primary, target, excluded, config.params);
    ConceptChoice choice = profiles.size() == 1 ? selectConcept(primary, target, excluded, config.params)
                                                : blendGroup(profiles, target, excluded, config.params);
    why.push_back("taxonomy candidates considered: " + std::to_string(scored.size()) +
                  (profiles.size() > 1 ? " (group of " + std::to_string(profiles.size()) + ", minimax score)" : ""));
    why.push_back("chose concept " + choice.path + " from profile taxonomy: predicted " +
                  fmtVA(choice.predictedAffect) + ", score " + fmt3(choice.score) + " (" +
                  std::string(toString(choice.layerProvenance)) + " layer)");
    d.mode = MetaphorMode::representational;
    d.conceptName = choice.path;
    d.predictedAffect = choice.predictedAffect;
  } catch (const NoCandidate&) {
    why.push_back("profile taxonomy has no eligible concept");
  }

  // 2. lexicon
  if (!d.conceptName) {
    MetaphorQuery q;
    q.target = target;
    q.minConcreteness = config.minConcreteness;
    q.maxResults = 1;
    for (const auto& e : excluded) q.excluded.insert(std::string(taxpath::leafName(e)));
    try {
      const auto hits = queryMetaphor(lexicon, q);
      d.mode = MetaphorMode::representational;
      d.conceptName = hits.front().word;
      d.predictedAffect = hits.front().affect;
      why.push_back("lexicon lookup (concreteness >= " + fmt3(config.minConcreteness) + ", " +
                    std::to_string(q.excluded.size()) + " words excluded) chose '" + hits.front().word +
                    "' with affect " + fmtVA(hits.front().affect));
    } catch (const EmptyResult&) {
      why.push_back("lexicon has no eligible concrete word");
    }
  }

  // 3. abstract
  if (!d.conceptName) {
    Recipe r = buildAbstractRecipe(target, primary, config);
    std::vector<std::string> parts;
    for (const auto& e : r.elements) parts.push_back(std::string(toString(e.element)) + " " + fmt3(e.weight));
    d.mode = MetaphorMode::abstract;
    d.predictedAffect = recipeAffect(r, primary);
    d.recipe = std::move(r);
    why.push_back("abstract recipe: " + detail::joinList(parts));
  }
  why.push_back("predicted affect " + fmtVA(d.predictedAffect) + " at distance " +
                fmt3(distance(d.predictedAffect, target)) + " from inferred");
  return d;
}

inline MetaphorDecision chooseMetaphor(const TurnAnalysis& analysis, const Profile& profile, const Lexicon& lexicon,
                                       const TurnHistory& history, const MetaphorConfig& config = {}) {
  return chooseMetaphor(analysis, std::span<const Profile>(&profile, 1), lexicon, history, config);
}

// History key for a decision: the concept, or the recipe identity.
inline std::string historyKey(const MetaphorDecision& d) {
  if (d.conceptName) return *d.conceptName;
  return d.recipe ? d.recipe->key() : std::string{};
}

}  // namespace copaint
