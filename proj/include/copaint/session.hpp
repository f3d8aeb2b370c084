#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "lexicon.hpp"
#include "metaphor.hpp"
#include "png_io.hpp"
#include "profile_json.hpp"
#include "sketch.hpp"
#include "user_model.hpp"

namespace copaint {

// ---------------------------------------------------------------------------
// Turn-taking state machine

enum class SessionState { HumanTurn, RobotTurn, AwaitingFeedback, Closed };
enum class SessionEvent { endTurn, responseReady, feedback, skip, close };

inline constexpr std::array<SessionState, 4> kSessionStates{SessionState::HumanTurn, SessionState::RobotTurn,
                                                           SessionState::AwaitingFeedback, SessionState::Closed};
inline constexpr std::array<SessionEvent, 5> kSessionEvents{SessionEvent::endTurn, SessionEvent::responseReady,
                                                           SessionEvent::feedback, SessionEvent::skip,
                                                           SessionEvent::close};

inline std::string_view toString(SessionState s) {
  switch (s) {
    case SessionState::HumanTurn: return "HumanTurn";
    case SessionState::RobotTurn: return "RobotTurn";
    case SessionState::AwaitingFeedback: return "AwaitingFeedback";
    case SessionState::Closed: return "Closed";
  }
  return "Closed";
}

inline std::string_view toString(SessionEvent e) {
  switch (e) {
    case SessionEvent::endTurn: return "endTurn";
    case SessionEvent::responseReady: return "responseReady";
    case SessionEvent::feedback: return "feedback";
    case SessionEvent::skip: return "skip";
    case SessionEvent::close: return "close";
  }
  return "close";
}

inline std::optional<SessionState> nextState(SessionState s, SessionEvent e) {
  if (e == SessionEvent::close) return SessionState::Closed;
  switch (s) {
    case SessionState::HumanTurn:
      if (e == SessionEvent::endTurn) return SessionState::RobotTurn;
      break;
    case SessionState::RobotTurn:
      if (e == SessionEvent::responseReady) return SessionState::AwaitingFeedback;
      break;
    case SessionState::AwaitingFeedback:
      if (e == SessionEvent::feedback || e == SessionEvent::skip) return SessionState::HumanTurn;
      break;
    case SessionState::Closed:
      break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Feedback

// Self-assessment manikin ratings; 1 is the positive / high-arousal pole.
struct Feedback {
  int samValence = 5;
  int samArousal = 5;
  VAPoint mapped;

  static Feedback fromSam(int valence, int arousal) {
    if (valence < 1 || valence > 9 || arousal < 1 || arousal > 9) throw RangeError("SAM ratings must lie in [1,9]");
    return {valence, arousal, {(5.0 - valence) / 4.0, (5.0 - arousal) / 4.0}};
  }
};

// ---------------------------------------------------------------------------
// Configuration

struct RegionFraction {
  double x = 0.5, y = 0.0, width = 0.5, height = 1.0;
};

struct Config {
  InferenceWeights weights;
  UpdateParams params;
  std::size_t historyCapacity = 5;
  int strokeBudget = 60;
  std::string lexiconPath;  // empty: bundled demo lexicon
  std::string assetPath;    // empty: bundled assets
  double minConcreteness = 3.5;
  std::string profileDir;   // empty: in-memory profiles
  std::uint32_t seed = 1;
  RegionFraction robotRegion;

  void validate() const {
    weights.validate();
    params.validate();
    if (strokeBudget < 0) throw RangeError("strokeBudget must be >= 0");
    if (minConcreteness < 1 || minConcreteness > 5) throw RangeError("minConcreteness must lie in [1,5]");
    const auto& r = robotRegion;
    if (r.x < 0 || r.y < 0 || r.width <= 0 || r.height <= 0 || r.x + r.width > 1 + 1e-9 || r.y + r.height > 1 + 1e-9)
      throw RangeError("robotRegion must lie within the unit square");
  }

  MetaphorConfig metaphorConfig() const {
    MetaphorConfig m;
    m.params = params;
    m.minConcreteness = minConcreteness;
    return m;
  }
};

// Flat `key=value` lines; '#' starts a comment.
inline Config parseConfig(std::string_view text) {
  Config c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  auto num = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ParseError(lineNo, "not a number: '" + v + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineNo, "expected key=value");
    const std::string key(detail::trim(trimmed.substr(0, eq)));
    const std::string value(detail::trim(trimmed.substr(eq + 1)));
    if (key == "intensityWeight") c.weights.intensity = num(value);
    else if (key == "diagonalWeight") c.weights.diagonal = num(value);
    else if (key == "learningRate") c.params.learningRate = num(value);
    else if (key == "ancestorDecay") c.params.ancestorDecay = num(value);
    else if (key == "kNeighbors") c.params.kNeighbors = static_cast<int>(num(value));
    else if (key == "stddevPenalty") c.params.stddevPenalty = num(value);
    else if (key == "historyCapacity") c.historyCapacity = static_cast<std::size_t>(num(value));
    else if (key == "strokeBudget") c.strokeBudget = static_cast<int>(num(value));
    else if (key == "lexiconPath") c.lexiconPath = value;
    else if (key == "assetPath") c.assetPath = value;
    else if (key == "minConcreteness") c.minConcreteness = num(value);
    else if (key == "profileDir") c.profileDir = value;
    else if (key == "seed") c.seed = static_cast<std::uint32_t>(num(value));
    else if (key == "robotRegion") {
      std::istringstream parts(value);
      std::string a, b, w, h;
      if (!std::getline(parts, a, ',') || !std::getline(parts, b, ',') || !std::getline(parts, w, ',') ||
          !std::getline(parts, h))
        throw ParseError(lineNo, "robotRegion expects x,y,width,height fractions");
      c.robotRegion = {num(a), num(b), num(w), num(h)};
    } else {
      throw ParseError(lineNo, "unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

inline std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void writeTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

// Config plus the resources it names, loaded once.
struct Engine {
  Config config;
  Lexicon lexicon;
  AssetLibrary assets;

  static Engine fromConfig(Config config) {
    config.validate();
    Engine e;
    e.lexicon = config.lexiconPath.empty() ? demoLexicon() : loadLexicon(readTextFile(config.lexiconPath));
    e.assets = config.assetPath.empty() ? bundledAssets()
                                        : assetsFromJson(nlohmann::json::parse(readTextFile(config.assetPath)));
    e.config = std::move(config);
    return e;
  }
};

// ---------------------------------------------------------------------------
// Sessions

struct TurnRecord {
  TurnAnalysis analysis;
  MetaphorDecision decision;
  StrokePlan strokePlan;
  std::optional<Feedback> feedback;
};

struct RobotResponse {
  TurnAnalysis analysis;
  MetaphorDecision decision;
  StrokePlan strokePlan;
  std::string sketchNote;
};

inline nlohmann::json toJson(const RobotResponse& r) {
  return {{"analysis", toJson(r.analysis)},
          {"decision", toJson(r.decision)},
          {"strokePlan", toJson(r.strokePlan)},
          {"sketchNote", r.sketchNote}};
}

struct Session {
  std::string id;
  std::vector<std::string> profileIds;
  SessionState state = SessionState::HumanTurn;
  std::optional<Raster> canvas;
  int turnCount = 0;
  std::vector<TurnRecord> history;
  TurnHistory recent{5};
};

inline Session advance(Session session, SessionEvent event) {
  auto next = nextState(session.state, event);
  if (!next)
    throw InvalidTransition("cannot " + std::string(toString(event)) + " while " + std::string(toString(session.state)));
  session.state = *next;
  return session;
}

struct PixelRegion {
  int x = 0, y = 0, width = 1, height = 1;
};

inline PixelRegion robotRegion(const RegionFraction& f, int canvasWidth, int canvasHeight) {
  PixelRegion r;
  r.x = std::clamp(static_cast<int>(std::floor(f.x * canvasWidth)), 0, canvasWidth - 1);
  r.y = std::clamp(static_cast<int>(std::floor(f.y * canvasHeight)), 0, canvasHeight - 1);
  r.width = std::clamp(static_cast<int>(std::lround(f.width * canvasWidth)), 1, canvasWidth - r.x);
  r.height = std::clamp(static_cast<int>(std::lround(f.height * canvasHeight)), 1, canvasHeight - r.y);
  return r;
}

// Analysis and metaphor choice; the path shared by the HTTP turn endpoint and
// the CLI.
inline std::pair<TurnAnalysis, MetaphorDecision> decideTurn(const Raster& canvas, std::vector<std::string> symbols,
                                                            std::span<const Profile> profiles, const Engine& engine,
                                                            const TurnHistory& history) {
  if (profiles.empty()) throw InvalidArgument("a turn needs at least one profile");
  TurnAnalysis analysis = analyzeTurn(canvas, std::move(symbols), profiles.front(), engine.config.weights);
  MetaphorDecision decision = chooseMetaphor(analysis, profiles, engine.lexicon, history, engine.config.metaphorConfig());
  return {std::move(analysis), std::move(decision)};
}

// Vector sketch for a decision. Representational concepts without an asset
// fall back to an abstract recipe for the concept's predicted affect.
inline VectorComposition sketchFor(const MetaphorDecision& decision, const Profile& profile, const Engine& engine,
                                   int width, int height, std::uint32_t seed, std::string* note = nullptr) {
  if (decision.mode == MetaphorMode::representational && decision.conceptName) {
    try {
      VectorComposition comp = composeRepresentational(*decision.conceptName, engine.assets, width, height);
      if (note) *note = "asset '" + std::string(taxpath::leafName(*decision.conceptName)) + "'";
      return comp;
    } catch (const MissingAsset&) {
      const Recipe r = buildAbstractRecipe(decision.predictedAffect, profile, engine.config.metaphorConfig());
      if (note) *note = "no asset for '" + *decision.conceptName + "'; abstract recipe " + r.key().substr(7) + " for its affect";
      return composeAbstract(r, width, height, seed);
    }
  }
  if (note) *note = "abstract recipe " + decision.recipe->key().substr(7);
  return composeAbstract(*decision.recipe, width, height, seed);
}

// Pipeline-stage failure carrying the rationale collected so far.
class TurnFailed : public Error {
 public:
  TurnFailed(const std::string& what, std::vector<std::string> rationale)
      : Error("TurnFailed", what), rationale_(std::move(rationale)) {}
  const std::vector<std::string>& rationale() const { return rationale_; }

 private:
  std::vector<std::string> rationale_;
};

// Runs the robot's turn and moves the session to AwaitingFeedback. The robot
// paints inside its configured region of the canvas.
inline RobotResponse runRobotTurn(Session& session, std::span<const Profile> profiles, const Engine& engine,
                                  std::vector<std::string> symbols = {}) {
  if (session.state != SessionState::RobotTurn)
    throw InvalidTransition("robot turn requested while " + std::string(toString(session.state)));
  if (!session.canvas) throw InvalidArgument("session has no canvas");
  const Raster& canvas = *session.canvas;

  RobotResponse resp;
  std::tie(resp.analysis, resp.decision) = decideTurn(canvas, std::move(symbols), profiles, engine, session.recent);
  try {
    const PixelRegion region = robotRegion(engine.config.robotRegion, canvas.width(), canvas.height());
    const VectorComposition comp =
        sketchFor(resp.decision, profiles.front(), engine, region.width, region.height,
                  engine.config.seed + static_cast<std::uint32_t>(session.turnCount), &resp.sketchNote);
    const Raster target = rasterize(comp);
    const Raster current = canvas.crop(region.x, region.y, region.width, region.height);
    resp.strokePlan = offsetPlan(planStrokes(target, current, engine.config.strokeBudget), region.x, region.y);
  } catch (const Error& e) {
    throw TurnFailed(e.what(), resp.decision.rationale);
  }

  session.history.push_back({resp.analysis, resp.decision, resp.strokePlan, std::nullopt});
  session.recent.push(historyKey(resp.decision));
  ++session.turnCount;
  session = advance(std::move(session), SessionEvent::responseReady);
  return resp;
}

inline std::int64_t nowMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

// Applies the SAM reaction to whatever the last turn painted and returns the
// updated profile. Lexicon concepts are adopted into the taxonomy under
// lexicon/<word> on first feedback.
inline Profile recordFeedback(Session& session, const Feedback& feedback, Profile profile, const Engine& engine,
                              std::int64_t timestamp = 0) {
  if (session.state != SessionState::AwaitingFeedback || session.history.empty())
    throw InvalidTransition("feedback while " + std::string(toString(session.state)));
  TurnRecord& turn = session.history.back();
  const MetaphorDecision& d = turn.decision;
  const UpdateParams& params = engine.config.params;
  if (d.mode == MetaphorMode::representational && d.conceptName) {
    std::string path = *d.conceptName;
    if (!profile.taxonomy.contains(path)) {
      const LexiconEntry* entry = engine.lexicon.find(path);
      path = taxpath::join("lexicon", slugify(path));
      if (!profile.taxonomy.contains(path)) profile.taxonomy.addLeaf(path, entry ? entry->affect : d.predictedAffect);
    }
    profile = applyReaction(std::move(profile), path, feedback.mapped, params, timestamp);
  } else if (d.recipe) {
    std::vector<Element> elements;
    for (const auto& e : d.recipe->elements) elements.push_back(e.element);
    profile = applyElementReaction(std::move(profile), elements, feedback.mapped, params, timestamp);
  }
  turn.feedback = feedback;
  session = advance(std::move(session), SessionEvent::feedback);
  return profile;
}

// ---------------------------------------------------------------------------
// Stores

// Profiles by id, optionally persisted as <dir>/<id>.json. Unknown ids are
// created from the demo taxonomy on first access. Single writer, many readers.
class ProfileStore {
 public:
  explicit ProfileStore(std::string dir = {}) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  Profile get(const std::string& id) {
    validateId(id);
    {
      std::shared_lock lock(mutex_);
      if (auto it = profiles_.find(id); it != profiles_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = profiles_.find(id); it != profiles_.end()) return it->second;
    Profile p;
    const std::string file = pathFor(id);
    if (!file.empty() && std::filesystem::exists(file))
      p = loadProfile(readTextFile(file));
    else
      p = demoProfile(id);
    profiles_[id] = p;
    return p;
  }

  void put(const Profile& p) {
    validateId(p.id);
    std::unique_lock lock(mutex_);
    profiles_[p.id] = p;
    if (const std::string file = pathFor(p.id); !file.empty()) writeTextFile(file, saveProfile(p));
  }

  // Read-modify-write under the writer lock.
  Profile update(const std::string& id, const std::function<Profile(Profile)>& fn) {
    Profile current = get(id);
    std::unique_lock lock(mutex_);
    current = profiles_.at(id);
    Profile next = fn(std::move(current));
    next.id = id;
    profiles_[id] = next;
    if (const std::string file = pathFor(id); !file.empty()) writeTextFile(file, saveProfile(next));
    return next;
  }

 private:
  static void validateId(const std::string& id) {
    if (id.empty() || id.find_first_of("/\\") != std::string::npos || id == "." || id == "..")
      throw InvalidArgument("invalid profile id '" + id + "'");
  }
  std::string pathFor(const std::string& id) const {
    return dir_.empty() ? std::string{} : (std::filesystem::path(dir_) / (id + ".json")).string();
  }

  std::string dir_;
  std::shared_mutex mutex_;
  std::map<std::string, Profile> profiles_;
};

// Sessions by id; operations on one session are serialized, distinct
// sessions run concurrently.
class SessionManager {
 public:
  std::string create(std::vector<std::string> profileIds, std::size_t historyCapacity) {
    if (profileIds.empty()) throw InvalidArgument("a session needs at least one profile id");
    std::lock_guard lock(mutex_);
    auto slot = std::make_shared<Slot>();
    slot->session.id = "s" + std::to_string(++counter_);
    slot->session.profileIds = std::move(profileIds);
    slot->session.recent = TurnHistory(historyCapacity);
    const std::string id = slot->session.id;
    sessions_[id] = std::move(slot);
    return id;
  }

  template <typename Fn>
  auto with(const std::string& id, Fn&& fn) {
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard lock(mutex_);
      auto it = sessions_.find(id);
      if (it == sessions_.end()) throw UnknownPath("unknown session '" + id + "'");
      slot = it->second;
    }
    std::lock_guard lock(slot->mutex);
    return fn(slot->session);
  }

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };
  std::mutex mutex_;
  std::uint64_t counter_ = 0;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

// ---------------------------------------------------------------------------
// Study artifacts: the four emotions, each as an abstract and a
// representational sketch for a profile without personal data.

struct StudyArtifact {
  EmotionCategory emotion;
  MetaphorMode mode;
  MetaphorDecision decision;
  VectorComposition composition;
  std::string note;
};

inline MetaphorDecision genericDecision(EmotionCategory emotion, MetaphorMode mode, const Engine& engine) {
  const Profile profile = demoProfile("generic");
  const VAPoint target = quadrantOf(emotion);
  MetaphorDecision d;
  d.rationale.push_back("target " + std::string(toString(emotion)) + " " + detail::fmtVA(target));
  if (mode == MetaphorMode::representational) {
    // generic sketches need a drawable symbol: skip concepts without an asset
    std::set<std::string> excluded;
    for (const auto& [path, n] : profile.taxonomy.nodes())
      if (!path.empty() && !findAsset(engine.assets, path)) excluded.insert(path);
    d.rationale.push_back("candidates restricted to concepts with a sketch asset (" +
                          std::to_string(profile.taxonomy.size() - 1 - excluded.size()) + " nodes)");
    try {
      const ConceptChoice c = selectConcept(profile, target, excluded, engine.config.params);
      d.mode = MetaphorMode::representational;
      d.conceptName = c.path;
      d.predictedAffect = c.predictedAffect;
      d.rationale.push_back("chose concept " + c.path + " score " + detail::fmt3(c.score));
    } catch (const NoCandidate&) {
      MetaphorQuery q;
      q.target = target;
      q.minConcreteness = engine.config.minConcreteness;
      q.maxResults = 1;
      const auto hit = queryMetaphor(engine.lexicon, q).front();
      d.mode = MetaphorMode::representational;
      d.conceptName = hit.word;
      d.predictedAffect = hit.affect;
      d.rationale.push_back("lexicon chose '" + hit.word + "'");
    }
  } else {
    Recipe r = buildAbstractRecipe(target, profile, engine.config.metaphorConfig());
    d.mode = MetaphorMode::abstract;
    d.predictedAffect = recipeAffect(r, profile);
    d.rationale.push_back("abstract recipe " + r.key().substr(7));
    d.recipe = std::move(r);
  }
  d.rationale.push_back("predicted affect " + detail::fmtVA(d.predictedAffect));
  return d;
}

inline constexpr int kStudyCanvasSize = 256;

inline std::vector<StudyArtifact> reproduceStudyArtifacts(const Engine& engine) {
  const Profile profile = demoProfile("generic");
  std::vector<StudyArtifact> out;
  for (EmotionCategory e : kCategories)
    for (MetaphorMode m : {MetaphorMode::abstract, MetaphorMode::representational}) {
      StudyArtifact a{e, m, genericDecision(e, m, engine), {}, {}};
      a.composition = sketchFor(a.decision, profile, engine, kStudyCanvasSize, kStudyCanvasSize, engine.config.seed, &a.note);
      out.push_back(std::move(a));
    }
  return out;
}

inline std::string artifactStem(const StudyArtifact& a) {
  return std::string(toString(a.emotion)) + "-" + (a.mode == MetaphorMode::abstract ? "abstract" : "representational");
}

// Writes <stem>.json and <stem>.svg per artifact plus an index study.json.
inline std::vector<std::string> writeStudyArtifacts(const std::vector<StudyArtifact>& artifacts, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  nlohmann::json index = nlohmann::json::array();
  for (const auto& a : artifacts) {
    const std::string stem = artifactStem(a);
    nlohmann::json j{{"emotion", toString(a.emotion)},
                     {"decision", toJson(a.decision)},
                     {"composition", toJson(a.composition)},
                     {"sketchNote", a.note}};
    const auto base = std::filesystem::path(dir) / stem;
    writeTextFile(base.string() + ".json", j.dump(2) + "\n");
    writeTextFile(base.string() + ".svg", toSvg(a.composition));
    written.push_back(base.string() + ".json");
    written.push_back(base.string() + ".svg");
    index.push_back({{"artifact", stem}, {"emotion", toString(a.emotion)}, {"decision", toJson(a.decision)}});
  }
  writeTextFile((std::filesystem::path(dir) / "study.json").string(), index.dump(2) + "\n");
  written.push_back((std::filesystem::path(dir) / "study.json").string());
  return written;
}

}  // namespace copaint
