#include <gtest/gtest.h>

#include "support.hpp"

using namespace copaint;
using namespace testsupport;

namespace {

Profile emptyProfile() {
  Profile p;
  p.id = "empty";
  return p;
}

TurnAnalysis analysisAt(VAPoint inferred, std::vector<std::string> declared = {}) {
  TurnAnalysis a;
  a.inferred = inferred;
  a.category = categoryOf(inferred);
  a.declaredSymbols = std::move(declared);
  return a;
}

}  // namespace

TEST(AnalyzeTurn, SolidYellow) {
  const auto a = analyzeTurn(Raster(32, 32, Rgb{255, 255, 0}), {}, emptyProfile());
  EXPECT_NEAR(a.inferred.valence, 0.607, 5e-4);
  EXPECT_NEAR(a.inferred.arousal, 0.357, 5e-4);
  EXPECT_EQ(a.category, EmotionCategory::happy);
  EXPECT_FALSE(a.salientSymbol);
}

TEST(AnalyzeTurn, SalientSymbol) {
  const Profile p = demoProfile("demo");
  const auto a = analyzeTurn(Raster(8, 8), {"nature/forest", "object/skull"}, p);
  ASSERT_TRUE(a.salientSymbol);
  EXPECT_EQ(*a.salientSymbol, "object/skull");
  // ties go to the first declared
  const auto b = analyzeTurn(Raster(8, 8), {"object/balloon", "activity/traveling"}, p);
  EXPECT_EQ(*b.salientSymbol, "object/balloon");
}

TEST(AnalyzeTurn, RedOverride) {
  Profile p = emptyProfile();
  p.elementOverrides[Element::red] = {{0.0, 0.5}, Layer::known};
  const auto a = analyzeTurn(Raster(32, 32, Rgb{255, 0, 0}), {}, p);
  EXPECT_NEAR(a.inferred.valence, 0.25, 1e-12);
  const auto g = analyzeTurn(Raster(32, 32, Rgb{255, 0, 0}), {}, emptyProfile());
  EXPECT_NEAR(g.inferred.valence, -7.0 / 18.0 + 0.25, 1e-12);
}

TEST(ChooseMetaphor, BalloonWithForestExcluded) {
  Profile p = emptyProfile();
  // "nature" stays a candidate and ties at distance 0; depth ties, alphabetical picks balloon
  p.taxonomy.addLeaf("balloon", {0.5, 0.5});
  p.taxonomy.addLeaf("nature/forest", {0.5, 0.5});
  const auto d = chooseMetaphor(analysisAt({0.5, 0.5}, {"nature/forest"}), p, Lexicon{}, TurnHistory{});
  EXPECT_EQ(d.mode, MetaphorMode::representational);
  EXPECT_EQ(*d.conceptName, "balloon");
  EXPECT_EQ(d.predictedAffect, (VAPoint{0.5, 0.5}));
  EXPECT_FALSE(d.recipe);
  bool mentionsExclusion = false;
  for (const auto& line : d.rationale) mentionsExclusion = mentionsExclusion || line.find("excluded") != std::string::npos;
  EXPECT_TRUE(mentionsExclusion);
}

TEST(ChooseMetaphor, EmptyEverythingFallsBackToAbstract) {
  const auto d = chooseMetaphor(analysisAt({0.2, -0.3}), emptyProfile(), Lexicon{}, TurnHistory{});
  EXPECT_EQ(d.mode, MetaphorMode::abstract);
  ASSERT_TRUE(d.recipe);
  EXPECT_FALSE(d.conceptName);
  EXPECT_NO_THROW(d.recipe->validate());
  EXPECT_FALSE(d.rationale.empty());
}

TEST(ChooseMetaphor, LexiconFallback) {
  const Lexicon lex = loadLexicon("word,valence,arousal,concreteness\nballoon,7,7,5\nidea,7,7,1\n");
  const auto d = chooseMetaphor(analysisAt({0.5, 0.5}), emptyProfile(), lex, TurnHistory{});
  EXPECT_EQ(d.mode, MetaphorMode::representational);
  EXPECT_EQ(*d.conceptName, "balloon");
  EXPECT_EQ(predictAffect(d, emptyProfile(), lex), d.predictedAffect);
}

TEST(ChooseMetaphor, HistoryPreventsRepeat) {
  Profile p = emptyProfile();
  p.taxonomy.addLeaf("object/balloon", {0.5, 0.5});
  p.taxonomy.addLeaf("object/presents", {0.4, 0.4});
  TurnHistory h(5);
  const auto first = chooseMetaphor(analysisAt({0.5, 0.5}), p, Lexicon{}, h);
  EXPECT_EQ(*first.conceptName, "object/balloon");
  h.push(historyKey(first));
  const auto second = chooseMetaphor(analysisAt({0.5, 0.5}), p, Lexicon{}, h);
  EXPECT_NE(*second.conceptName, "object/balloon");
}

TEST(ChooseMetaphor, GroupUsesMinimax) {
  std::vector<Profile> group{demoProfile("a"), demoProfile("b")};
  group[1].taboo.insert("object");
  const auto d = chooseMetaphor(analysisAt({0.5, 0.5}), group, demoLexicon(), TurnHistory{});
  ASSERT_TRUE(d.conceptName);
  EXPECT_FALSE(taxpath::within(*d.conceptName, "object"));
}

TEST(TurnHistory, Capacity) {
  TurnHistory h(2);
  h.push("a");
  h.push("b");
  h.push("c");
  EXPECT_EQ(h.recent().size(), 2u);
  EXPECT_FALSE(h.contains("a"));
  EXPECT_TRUE(h.contains("c"));
  TurnHistory none(0);
  none.push("x");
  EXPECT_TRUE(none.recent().empty());
}

TEST(AbstractRecipe, AngryAndRelaxed) {
  const Profile p = emptyProfile();
  const Recipe angry = buildAbstractRecipe(quadrantOf(EmotionCategory::angry), p);
  EXPECT_TRUE(angry.contains(Element::red) || angry.contains(Element::black));
  EXPECT_TRUE(angry.contains(Element::diagonal));
  const Recipe relaxed = buildAbstractRecipe(quadrantOf(EmotionCategory::relaxed), p);
  EXPECT_TRUE(relaxed.contains(Element::circle) || relaxed.contains(Element::horizontal));
  for (const Recipe* r : {&angry, &relaxed}) {
    EXPECT_NO_THROW(r->validate());
    EXPECT_LE(r->paletteSize, 4);
  }
}

TEST(AbstractRecipe, ExactSingleElement) {
  // brown sits exactly at the sad center
  const Recipe r = buildAbstractRecipe(genericTable()[Element::brown], emptyProfile());
  ASSERT_EQ(r.elements.size(), 1u);
  EXPECT_EQ(r.elements[0].element, Element::brown);
  EXPECT_DOUBLE_EQ(r.elements[0].weight, 1.0);
}

TEST(AbstractRecipe, Properties) {
  std::mt19937 rng(71);
  for (int i = 0; i < 100; ++i) {
    const VAPoint t = randomVA(rng);
    const Recipe r = buildAbstractRecipe(t, emptyProfile());
    EXPECT_NO_THROW(r.validate());
    int colors = 0, marks = 0;
    for (const auto& e : r.elements) {
      (kindOf(e.element) == ElementKind::color ? colors : marks)++;
      const double units = e.weight / 0.05;
      EXPECT_NEAR(units, std::round(units), 1e-9);
    }
    EXPECT_LE(colors, 4);
    EXPECT_LE(marks, 2);
    EXPECT_EQ(kindOf(r.elements.front().element), ElementKind::color);
    EXPECT_EQ(buildAbstractRecipe(t, emptyProfile()), r);
    double total = 0;
    for (const auto& e : r.elements) total += e.weight;
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(PredictAffect, Examples) {
  Profile p = demoProfile("d");
  p.taxonomy.node("object/balloon").explicitAffect = LayeredAffect{{0.4, 0.4}, Layer::known};
  MetaphorDecision rep;
  rep.mode = MetaphorMode::representational;
  rep.conceptName = "object/balloon";
  EXPECT_EQ(predictAffect(rep, p, demoLexicon()), (VAPoint{0.4, 0.4}));

  MetaphorDecision abs;
  abs.mode = MetaphorMode::abstract;
  abs.recipe = Recipe{{{Element::red, 0.5}, {Element::black, 0.5}}, 2, 0};
  const VAPoint v = predictAffect(abs, emptyProfile(), Lexicon{});
  EXPECT_NEAR(v.valence, (-7.0 / 18 - 0.375) / 2, 1e-12);
  EXPECT_NEAR(v.valence, -0.382, 5e-4);
  EXPECT_NEAR(v.arousal, 0.139, 5e-4);

  Recipe bad{{{Element::red, 0.0}}, 1, 0};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  Recipe noColor{{{Element::circle, 1.0}}, 0, 6};
  EXPECT_THROW(noColor.validate(), InvalidArgument);
}

TEST(ChooseMetaphor, ContractPropertiesOnRandomTurns) {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    Profile p;
    p.id = "r";
    p.taxonomy = randomTaxonomy(rng, std::uniform_int_distribution<int>(1, 120)(rng));
    const auto paths = nonRootPaths(p.taxonomy);
    std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
    std::vector<std::string> declared{paths[pick(rng)]};
    TurnHistory history(3);
    for (int turn = 0; turn < 5; ++turn) {
      const auto a = analysisAt(randomVA(rng), declared);
      const auto d = chooseMetaphor(a, p, demoLexicon(), history);
      if (d.conceptName && p.taxonomy.contains(*d.conceptName)) {
        EXPECT_FALSE(taxpath::within(*d.conceptName, declared[0]));
        EXPECT_FALSE(history.contains(*d.conceptName));
        std::set<std::string> excluded;
        for (const auto& q : paths)
          if (taxpath::within(q, declared[0])) excluded.insert(q);
        for (const auto& h : history.recent()) excluded.insert(h);
        const auto want = oracleSelect(p, a.inferred, excluded, 0.5);
        ASSERT_TRUE(want);
        EXPECT_EQ(*d.conceptName, want->path);
      }
      history.push(historyKey(d));
    }
  }
}
