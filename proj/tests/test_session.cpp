#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include "support.hpp"

using namespace copaint;
using namespace testsupport;

namespace {

Engine defaultEngine() { return Engine::fromConfig(Config{}); }

Session sessionWithCanvas(const Raster& canvas) {
  Session s;
  s.id = "t";
  s.profileIds = {"p"};
  s.canvas = canvas;
  return s;
}

Raster redDiagonalCanvas() {
  Raster r(128, 128, Rgb{255, 0, 0});
  Raster left(64, 128, Rgb{255, 0, 0});
  drawLine(left, 8, 120, 56, 8, 3, Rgb{255, 0, 0});
  r.blit(left, 0, 0);
  drawLine(r, 8, 120, 56, 72, 2, kBlack);
  return r;
}

}  // namespace

TEST(StateMachine, ExhaustiveTransitionTable) {
  using S = SessionState;
  using E = SessionEvent;
  const std::map<std::pair<S, E>, S> allowed{
      {{S::HumanTurn, E::endTurn}, S::RobotTurn},
      {{S::RobotTurn, E::responseReady}, S::AwaitingFeedback},
      {{S::AwaitingFeedback, E::feedback}, S::HumanTurn},
      {{S::AwaitingFeedback, E::skip}, S::HumanTurn},
  };
  for (S s : kSessionStates)
    for (E e : kSessionEvents) {
      Session session;
      session.state = s;
      if (e == E::close) {
        EXPECT_EQ(advance(session, e).state, S::Closed);
      } else if (auto it = allowed.find({s, e}); it != allowed.end()) {
        EXPECT_EQ(advance(session, e).state, it->second);
      } else {
        EXPECT_THROW(advance(session, e), InvalidTransition) << toString(s) << " " << toString(e);
      }
    }
}

TEST(Feedback, SamMapping) {
  EXPECT_EQ(Feedback::fromSam(1, 2).mapped, (VAPoint{1.0, 0.75}));
  EXPECT_EQ(Feedback::fromSam(5, 5).mapped, (VAPoint{0, 0}));
  EXPECT_EQ(Feedback::fromSam(9, 9).mapped, (VAPoint{-1, -1}));
  EXPECT_THROW(Feedback::fromSam(0, 5), RangeError);
  EXPECT_THROW(Feedback::fromSam(5, 10), RangeError);
}

TEST(Config, ParseAndValidate) {
  const Config c = parseConfig(
      "# comment\nintensityWeight=0.3\ndiagonalWeight = 0.2\nlearningRate=0.4\nancestorDecay=0.25\nkNeighbors=4\n"
      "stddevPenalty=0\nhistoryCapacity=7\nstrokeBudget=12\nminConcreteness=4\nseed=9\nrobotRegion=0.5,0,0.5,1\n");
  EXPECT_DOUBLE_EQ(c.weights.intensity, 0.3);
  EXPECT_DOUBLE_EQ(c.weights.diagonal, 0.2);
  EXPECT_DOUBLE_EQ(c.params.learningRate, 0.4);
  EXPECT_DOUBLE_EQ(c.params.ancestorDecay, 0.25);
  EXPECT_EQ(c.params.kNeighbors, 4);
  EXPECT_DOUBLE_EQ(c.params.stddevPenalty, 0.0);
  EXPECT_EQ(c.historyCapacity, 7u);
  EXPECT_EQ(c.strokeBudget, 12);
  EXPECT_DOUBLE_EQ(c.minConcreteness, 4.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_THROW(parseConfig("bogus=1\n"), ParseError);
  EXPECT_THROW(parseConfig("learningRate=abc\n"), ParseError);
  EXPECT_THROW(parseConfig("learningRate=2\n"), RangeError);
  EXPECT_THROW(parseConfig("intensityWeight=-1\n"), RangeError);
  EXPECT_THROW(parseConfig("robotRegion=0.8,0,0.5,1\n"), RangeError);
  EXPECT_THROW(parseConfig("justakey\n"), ParseError);
}

TEST(Config, RobotRegion) {
  const PixelRegion r = robotRegion(RegionFraction{}, 101, 50);
  EXPECT_EQ(r.x, 50);
  EXPECT_EQ(r.width, 51);
  EXPECT_EQ(r.y, 0);
  EXPECT_EQ(r.height, 50);
}

TEST(Engine, LoadsConfiguredResources) {
  const auto dir = std::filesystem::temp_directory_path() / "copaint-engine-test";
  std::filesystem::create_directories(dir);
  writeTextFile((dir / "lex.csv").string(), "word,valence,arousal,concreteness\nkite,8,6,5\n");
  AssetLibrary lib;
  lib["kite"] = VectorComposition{10, 10, {Triangle{{{{5, 0}, {0, 10}, {10, 10}}}, kBlack}}};
  writeTextFile((dir / "assets.json").string(), toJson(lib.at("kite")).dump());
  nlohmann::json assets = {{"kite", toJson(lib.at("kite"))}};
  writeTextFile((dir / "assets.json").string(), assets.dump());
  Config c;
  c.lexiconPath = (dir / "lex.csv").string();
  c.assetPath = (dir / "assets.json").string();
  const Engine e = Engine::fromConfig(c);
  EXPECT_EQ(e.lexicon.size(), 1u);
  EXPECT_NE(findAsset(e.assets, "kite"), nullptr);
  c.lexiconPath = (dir / "missing.csv").string();
  EXPECT_THROW(Engine::fromConfig(c), InvalidArgument);
}

TEST(RobotTurn, RequiresRobotTurnState) {
  const Engine engine = defaultEngine();
  Session s = sessionWithCanvas(Raster(32, 32));
  const Profile p = demoProfile("p");
  EXPECT_THROW(runRobotTurn(s, std::span<const Profile>(&p, 1), engine), InvalidTransition);
  s.state = SessionState::RobotTurn;
  s.canvas.reset();
  EXPECT_THROW(runRobotTurn(s, std::span<const Profile>(&p, 1), engine), InvalidArgument);
}

TEST(RobotTurn, RedDiagonalEmptyProfile) {
  Config cfg;
  cfg.strokeBudget = 20;
  const Engine engine = Engine::fromConfig(cfg);
  Profile p;
  p.id = "empty";
  Raster canvas(128, 128);
  Raster left(64, 128, Rgb{255, 0, 0});
  drawLine(left, 6, 120, 58, 8, 3, kBlack);
  canvas.blit(left, 0, 0);
  Session s = advance(sessionWithCanvas(canvas), SessionEvent::endTurn);
  const RobotResponse r = runRobotTurn(s, std::span<const Profile>(&p, 1), engine);
  EXPECT_GE(r.analysis.lines.diagonal, 1);
  // empty taxonomy: nearest concrete lexicon word
  double best = 1e9;
  for (const auto& [w, e] : engine.lexicon.entries())
    if (e.concreteness >= cfg.minConcreteness) best = std::min(best, distance(e.affect, r.analysis.inferred));
  EXPECT_NEAR(distance(r.decision.predictedAffect, r.analysis.inferred), best, 1e-12);
  EXPECT_EQ(s.state, SessionState::AwaitingFeedback);
  EXPECT_EQ(s.turnCount, 1);
  EXPECT_EQ(s.history.size(), 1u);
  // strokes stay inside the robot's half
  for (const auto& stroke : r.strokePlan.strokes)
    for (const auto& pt : stroke.points) {
      EXPECT_GE(pt.x, 64.0);
      EXPECT_LE(pt.x, 127.0);
    }
  EXPECT_LE(static_cast<int>(r.strokePlan.strokes.size()), 20);
}

TEST(RobotTurn, SpecRedDiagonalNumbers) {
  // fully red canvas with a diagonal: arousal 0.578 case
  HueAreas h;
  h[HueBin::red] = 1.0;
  h.meanValue = 1.0;
  LineStats l;
  l.diagonalFraction = 1.0;
  const VAPoint inferred = inferEmotion(h, l, genericTable(), {});
  TurnAnalysis a;
  a.inferred = inferred;
  Profile empty;
  const auto d = chooseMetaphor(a, empty, demoLexicon(), TurnHistory{});
  EXPECT_NEAR(inferred.arousal, 0.578, 5e-4);
  EXPECT_LE(distance(d.predictedAffect, inferred), 0.25);
}

TEST(RobotTurn, BlankCanvasTargetsWhitePoint) {
  const Engine engine = defaultEngine();
  const Profile p = demoProfile("p");
  Session s = advance(sessionWithCanvas(Raster(64, 64)), SessionEvent::endTurn);
  const RobotResponse r = runRobotTurn(s, std::span<const Profile>(&p, 1), engine);
  EXPECT_NEAR(r.analysis.inferred.valence, 0.639, 5e-4);
  EXPECT_NEAR(r.analysis.inferred.arousal, -1.0 / 18.0, 1e-9);
  const auto want = oracleSelect(p, r.analysis.inferred, {}, 0.5);
  ASSERT_TRUE(want);
  EXPECT_EQ(*r.decision.conceptName, want->path);
}

TEST(RobotTurn, HistoryLengthTracksTurns) {
  const Engine engine = defaultEngine();
  Profile p = demoProfile("p");
  Session s = sessionWithCanvas(Raster(48, 48, Rgb{40, 80, 220}));
  for (int i = 0; i < 6; ++i) {
    s = advance(s, SessionEvent::endTurn);
    runRobotTurn(s, std::span<const Profile>(&p, 1), engine);
    EXPECT_EQ(static_cast<int>(s.history.size()), s.turnCount);
    if (i % 2 == 0) {
      s = advance(s, SessionEvent::skip);
      EXPECT_FALSE(s.history.back().feedback);
    } else {
      p = recordFeedback(s, Feedback::fromSam(3, 6), p, engine);
      EXPECT_TRUE(s.history.back().feedback);
    }
    EXPECT_EQ(s.state, SessionState::HumanTurn);
  }
  // no concept repeats within the history capacity (5)
  std::vector<std::string> keys;
  for (const auto& t : s.history) keys.push_back(historyKey(t.decision));
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size() && j <= i + 5; ++j)
      if (!keys[i].starts_with("recipe:")) EXPECT_NE(keys[i], keys[j]);
}

TEST(RecordFeedback, ContractsConceptTowardReaction) {
  const Engine engine = defaultEngine();
  Profile p = demoProfile("p");
  Session s = advance(sessionWithCanvas(Raster(48, 48, Rgb{255, 255, 0})), SessionEvent::endTurn);
  const RobotResponse r = runRobotTurn(s, std::span<const Profile>(&p, 1), engine);
  ASSERT_TRUE(r.decision.conceptName);
  const std::string concept_ = *r.decision.conceptName;
  const Feedback fb = Feedback::fromSam(1, 1);
  const double before = distance(effectiveAffect(p, concept_).affect, fb.mapped);
  const Profile updated = recordFeedback(s, fb, p, engine, 42);
  const double after = distance(effectiveAffect(updated, concept_).affect, fb.mapped);
  EXPECT_NEAR(after, 0.5 * before, 1e-12);
  EXPECT_EQ(updated.history.back().timestamp, 42);
  EXPECT_THROW(recordFeedback(s, fb, updated, engine), InvalidTransition);
}

TEST(RecordFeedback, RecipeElementsMove) {
  const Engine engine = defaultEngine();
  Profile p;
  p.id = "bare";
  Session s = advance(sessionWithCanvas(Raster(32, 32, Rgb{0, 0, 200})), SessionEvent::endTurn);
  Config cfg;
  cfg.lexiconPath.clear();
  Engine noLex = engine;
  noLex.lexicon = Lexicon{};
  const RobotResponse r = runRobotTurn(s, std::span<const Profile>(&p, 1), noLex);
  ASSERT_EQ(r.decision.mode, MetaphorMode::abstract);
  const Feedback fb = Feedback::fromSam(9, 1);
  const Profile updated = recordFeedback(s, fb, p, noLex);
  for (const auto& e : r.decision.recipe->elements) {
    const VAPoint before = genericTable()[e.element];
    const VAPoint after = updated.elementOverrides.at(e.element).affect;
    EXPECT_NEAR(distance(after, fb.mapped), 0.5 * distance(before, fb.mapped), 1e-12);
  }
}

TEST(RecordFeedback, LexiconConceptAdopted) {
  Engine engine = defaultEngine();
  Profile p;
  p.id = "bare";
  Session s = advance(sessionWithCanvas(Raster(32, 32, Rgb{255, 255, 0})), SessionEvent::endTurn);
  const RobotResponse r = runRobotTurn(s, std::span<const Profile>(&p, 1), engine);
  ASSERT_TRUE(r.decision.conceptName);
  const Profile updated = recordFeedback(s, Feedback::fromSam(5, 5), p, engine);
  const std::string path = "lexicon/" + slugify(*r.decision.conceptName);
  ASSERT_TRUE(updated.taxonomy.contains(path));
  EXPECT_NEAR(distance(effectiveAffect(updated, path).affect, {0, 0}), 0.5 * distance(r.decision.predictedAffect, {0, 0}),
              1e-12);
}

TEST(ProfileStore, PersistsAndCreatesDemo) {
  const auto dir = std::filesystem::temp_directory_path() / "copaint-store-test";
  std::filesystem::remove_all(dir);
  {
    ProfileStore store(dir.string());
    Profile p = store.get("alice");
    EXPECT_EQ(p, demoProfile("alice"));
    p.taboo.insert("object/gun");
    store.put(p);
    store.update("alice", [](Profile q) {
      q.attributes["locale"] = "sv";
      return q;
    });
    EXPECT_THROW(store.get("../etc"), InvalidArgument);
  }
  ProfileStore reopened(dir.string());
  const Profile p = reopened.get("alice");
  EXPECT_TRUE(p.taboo.count("object/gun"));
  EXPECT_EQ(p.attributes.at("locale"), "sv");
}

TEST(SessionManager, PerSessionSerialization) {
  SessionManager m;
  const std::string a = m.create({"p"}, 5), b = m.create({"q"}, 5);
  EXPECT_NE(a, b);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 500; ++i)
        m.with(t % 2 ? a : b, [](Session& s) {
          const int v = s.turnCount;
          s.turnCount = v + 1;
          return 0;
        });
    });
  for (auto& th : threads) th.join();
  EXPECT_EQ(m.with(a, [](Session& s) { return s.turnCount; }), 2000);
  EXPECT_EQ(m.with(b, [](Session& s) { return s.turnCount; }), 2000);
  EXPECT_THROW(m.with("nope", [](Session&) { return 0; }), UnknownPath);
  EXPECT_THROW(m.create({}, 5), InvalidArgument);
}

TEST(StudyArtifacts, DeterministicAndConsistent) {
  const Engine engine = defaultEngine();
  const auto a = reproduceStudyArtifacts(engine), b = reproduceStudyArtifacts(engine);
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(toJson(a[i].decision).dump(), toJson(b[i].decision).dump());
    EXPECT_EQ(toSvg(a[i].composition), toSvg(b[i].composition));
  }
  for (const auto& art : a) {
    if (art.mode != MetaphorMode::abstract) {
      ASSERT_TRUE(art.decision.conceptName);
      EXPECT_NE(findAsset(engine.assets, *art.decision.conceptName), nullptr);
      continue;
    }
    const Recipe& r = *art.decision.recipe;
    if (art.emotion == EmotionCategory::angry) {
      EXPECT_TRUE(r.contains(Element::red) || r.contains(Element::black));
      EXPECT_TRUE(r.contains(Element::diagonal));
    }
    if (art.emotion == EmotionCategory::relaxed) EXPECT_TRUE(r.contains(Element::circle) || r.contains(Element::horizontal));
  }
  const auto dir = std::filesystem::temp_directory_path() / "copaint-study-test";
  std::filesystem::remove_all(dir);
  const auto files = writeStudyArtifacts(a, dir.string());
  EXPECT_EQ(files.size(), 17u);
  const std::string first = readTextFile((dir / "angry-abstract.json").string());
  writeStudyArtifacts(b, dir.string());
  EXPECT_EQ(readTextFile((dir / "angry-abstract.json").string()), first);
}
