#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reef/grammar.hpp"
#include "reef/matrix.hpp"
#include "reef/namespaces.hpp"
#include "reef/relations.hpp"
#include "reef/vocabulary.hpp"
#include "reef/walker.hpp"

using namespace reef;
using fixtures::link;
using fixtures::typed;

namespace {

const Vocabulary& V() { return Vocabulary::builtin(); }

GrammarRegistry registry() { return GrammarRegistry::fromEnvironment(); }

const char* kCoauthorship = R"({
  "name": "co",
  "steps": [
    {"predicate": "core:created", "direction": "out"},
    {"predicate": "core:created", "direction": "in",
     "filters": ["exclude-previous-node"], "emit": {"sign": "+"}}
  ]})";

WalkerConfig diffusion(double decay = 0.5) {
  WalkerConfig cfg;
  cfg.decay = decay;
  cfg.energyThreshold = 1e-9;
  return cfg;
}

}  // namespace

TEST(GrammarTest, ParsesAndExpandsCuries) {
  Grammar g = parseGrammar(kCoauthorship);
  EXPECT_EQ(g.name, "co");
  ASSERT_EQ(g.steps.size(), 2u);
  EXPECT_EQ(g.steps[0].predicate, ns::core("created"));
  EXPECT_EQ(g.steps[1].direction, StepDirection::In);
  EXPECT_TRUE(g.steps[1].has(StepFilter::Kind::ExcludePreviousNode));
  ASSERT_TRUE(g.steps[1].emit);
  EXPECT_EQ(g.steps[1].emit->sign, +1);
  EXPECT_FALSE(g.loop);
  EXPECT_TRUE(g.split);
}

TEST(GrammarTest, JsonRoundTrip) {
  for (const auto& name : registry().names()) {
    Grammar g = registry().load(name);
    Grammar again = parseGrammar(grammarToJson(g));
    EXPECT_EQ(grammarToJson(again), grammarToJson(g)) << name;
  }
}

TEST(GrammarTest, BindReplacesParameters) {
  Grammar g = registry().load("referee");
  EXPECT_FALSE(g.fullyBound());
  Grammar bound = g.bind({{"delta", "0.25"}, {"depth", "3"}});
  EXPECT_TRUE(bound.fullyBound());
  ASSERT_TRUE(bound.loop);
  EXPECT_DOUBLE_EQ(bound.loop->decayPerLoop, 0.25);
  EXPECT_EQ(bound.loop->maxPasses, 3u);
  Grammar news = registry().load("news").bind(
      {{"concept", "core:Concept"}, {"halfLife", "60"}});
  EXPECT_TRUE(news.fullyBound());
  EXPECT_DOUBLE_EQ(news.steps[0].timeDecay->halfLifeSeconds, 60.0);
  EXPECT_EQ(news.steps[0].filters[0].iri, ns::core("Concept"));
}

TEST(GrammarTest, ValidationErrors) {
  EXPECT_THROW(parseGrammar(fixtures::readFixture("grammars/bad-decay.json")),
               GrammarError);
  EXPECT_THROW(parseGrammar(fixtures::readFixture("grammars/malformed.json")),
               GrammarError);
  EXPECT_THROW(parseGrammar(R"({"name":"e","steps":[]})"), GrammarError);
  EXPECT_THROW(parseGrammar(R"({"name":"l","steps":[{"predicate":"core:cites"}],
                               "loop":{"backToStep":1}})"),
               GrammarError);
  EXPECT_THROW(parseGrammar(R"({"name":"t","steps":[{"predicate":"core:cites",
                               "timeDecay":{"halfLife":10}}]})"),
               GrammarError);
  EXPECT_THROW(parseGrammar(R"({"name":"d","steps":[{"predicate":"core:cites",
                               "direction":"sideways"}]})"),
               GrammarError);
  EXPECT_THROW(registry().load("nope"), UnknownGrammar);
  EXPECT_THROW(registry().load("../etc/passwd"), UnknownGrammar);
  Grammar referee = registry().load("referee");
  EXPECT_THROW(referee.bind({{"delta", "1.5"}}), GrammarError);
}

TEST(GrammarTest, ShippedGrammarsLoad) {
  auto names = registry().names();
  for (const char* required :
       {"coauthorship", "referee", "referee-coi", "news", "discover-generic"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), required), names.end())
        << required;
  }
  for (const auto& name : names) {
    EXPECT_NO_THROW(registry().load(name)) << name;
  }
  EXPECT_TRUE(registry().load("collaborator-search").experimental);
  EXPECT_FALSE(registry().load("coauthorship").experimental);
}

TEST(GrammarTest, StepScheduleWithLoop) {
  Grammar g = registry().load("referee").bind({{"delta", "0.5"}, {"depth", "2"}});
  std::vector<std::optional<std::size_t>> got;
  for (std::size_t h = 0; h < 10; ++h) got.push_back(g.stepAt(h));
  std::vector<std::optional<std::size_t>> want = {0, 1, 2, 3, 2, 3,
                                                  std::nullopt, std::nullopt,
                                                  std::nullopt, std::nullopt};
  EXPECT_EQ(got, want);
  Grammar plain = parseGrammar(kCoauthorship);
  EXPECT_EQ(plain.stepAt(1), 1u);
  EXPECT_EQ(plain.stepAt(2), std::nullopt);
  Grammar news = registry().load("news");
  EXPECT_EQ(news.stepAt(100), 0u);
}

TEST(WalkerTest, TwoAuthorCoauthorshipScoresEpsilonDeltaSquared) {
  QuadStore store;
  link(store, "http://e.org/a", "core:created", "http://e.org/item");
  link(store, "http://e.org/b", "core:created", "http://e.org/item");
  Walker w(store, V());
  auto cfg = diffusion(0.5);
  cfg.initialEnergy = 2.0;
  auto list = w.execute(parseGrammar(kCoauthorship), {"http://e.org/a"}, cfg);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list.entries()[0].resource, "http://e.org/b");
  EXPECT_NEAR(list.entries()[0].score, 2.0 * 0.25, 1e-15);
}

TEST(WalkerTest, SeedWithoutMatchingEdgesYieldsEmptyList) {
  QuadStore store;
  link(store, "http://e.org/a", "core:cites", "http://e.org/b");
  Walker w(store, V());
  EXPECT_TRUE(w.execute(parseGrammar(kCoauthorship), {"http://e.org/a"},
                        diffusion())
                  .empty());
}

TEST(WalkerTest, ZeroDecayStopsAfterTheFirstHop) {
  QuadStore store;
  link(store, "http://e.org/a", "core:created", "http://e.org/item");
  link(store, "http://e.org/b", "core:created", "http://e.org/item");
  Walker w(store, V());
  auto list =
      w.execute(parseGrammar(kCoauthorship), {"http://e.org/a"}, diffusion(0.0));
  EXPECT_TRUE(list.positiveOnly().empty());
}

TEST(WalkerTest, RejectsBadInput) {
  QuadStore store;
  link(store, "http://e.org/a", "core:created", "http://e.org/item");
  Walker w(store, V());
  Grammar g = parseGrammar(kCoauthorship);
  EXPECT_THROW(w.execute(g, {}, diffusion()), WalkError);
  EXPECT_THROW(w.execute(g, {"http://e.org/ghost"}, diffusion()), UnknownSeed);
  Grammar unknownPred = parseGrammar(
      R"({"name":"u","steps":[{"predicate":"http://e.org/nothing"}]})");
  EXPECT_THROW(w.execute(unknownPred, {"http://e.org/a"}, diffusion()),
               WalkError);
  EXPECT_THROW(w.execute(registry().load("referee"), {"http://e.org/a"},
                         diffusion()),
               WalkError);
  auto shortCfg = diffusion();
  shortCfg.maxSteps = 1;
  EXPECT_THROW(w.execute(g, {"http://e.org/a"}, shortCfg), WalkError);
  auto bad = diffusion();
  bad.energyThreshold = 2.0;
  EXPECT_THROW(w.execute(g, {"http://e.org/a"}, bad), WalkError);
  bad = diffusion();
  bad.decay = 1.5;
  EXPECT_THROW(bad.validate(), WalkError);
  bad = diffusion();
  bad.initialEnergy = 0.0;
  EXPECT_THROW(bad.validate(), WalkError);
}

TEST(MatrixTest, AdjacencyAndCoauthorshipExamples) {
  QuadStore store;
  link(store, "http://e.org/a", "core:created", "http://e.org/i1");
  link(store, "http://e.org/b", "core:created", "http://e.org/i1");
  link(store, "http://e.org/b", "core:created", "http://e.org/i2");
  link(store, "http://e.org/c", "core:created", "http://e.org/i2");
  link(store, "http://e.org/a", "core:created", "http://e.org/i2", "urn:test:h");
  auto id = [&](const char* s) {
    return static_cast<Eigen::Index>(*store.lookup(Term::iri(s)));
  };
  SparseMatrix a = adjacencyMatrix(store, ns::core("created"));
  EXPECT_EQ(a.nonZeros(), 5);
  EXPECT_EQ(a.coeff(id("http://e.org/a"), id("http://e.org/i2")), 1.0);
  SparseMatrix co = coauthorshipOracle(store);
  EXPECT_EQ(co.coeff(id("http://e.org/a"), id("http://e.org/b")), 2.0);
  EXPECT_EQ(co.coeff(id("http://e.org/a"), id("http://e.org/c")), 1.0);
  EXPECT_EQ(co.coeff(id("http://e.org/a"), id("http://e.org/a")), 0.0);
}

// Coauthorship diffusion equals ε0·δ² times the normalized matrix row, and is
// proportional to the unnormalized oracle when every agent has one item of
// equal size.
TEST(WalkerProperty, DiffusionMatchesMatrixOracle) {
  std::mt19937_64 rng(21);
  Grammar g = parseGrammar(kCoauthorship);
  for (int round = 0; round < 30; ++round) {
    auto graph = fixtures::randomAuthorItemGraph(rng);
    Walker w(graph.store, V());
    SparseMatrix n = normalizedCoauthorship(graph.store);
    auto cfg = diffusion(0.7);
    for (const auto& author : graph.authors) {
      auto seedId = graph.store.lookup(Term::iri(author));
      auto list = w.execute(g, {author}, cfg);
      for (const auto& author2 : graph.authors) {
        auto id2 = graph.store.lookup(Term::iri(author2));
        const double expected =
            seedId && id2 ? 0.49 * n.coeff(static_cast<Eigen::Index>(*seedId),
                                           static_cast<Eigen::Index>(*id2))
                          : 0.0;
        const double got = list.score(author2).value_or(0.0);
        EXPECT_NEAR(got, expected, 1e-12 + 1e-9 * std::abs(expected))
            << author << " -> " << author2;
      }
    }
  }
}

TEST(WalkerProperty, SupportMatchesUnnormalizedOracle) {
  std::mt19937_64 rng(22);
  Grammar g = parseGrammar(kCoauthorship);
  for (int round = 0; round < 30; ++round) {
    auto graph = fixtures::randomAuthorItemGraph(rng);
    Walker w(graph.store, V());
    SparseMatrix oracle = coauthorshipOracle(graph.store);
    for (const auto& author : graph.authors) {
      auto seedId = graph.store.lookup(Term::iri(author));
      auto list = w.execute(g, {author}, diffusion());
      for (const auto& author2 : graph.authors) {
        auto id2 = graph.store.lookup(Term::iri(author2));
        const bool linked =
            seedId && id2 &&
            oracle.coeff(static_cast<Eigen::Index>(*seedId),
                         static_cast<Eigen::Index>(*id2)) > 0;
        EXPECT_EQ(list.score(author2).value_or(0.0) > 0, linked);
      }
    }
  }
}

TEST(WalkerProperty, MonteCarloAgreesWithDiffusion) {
  std::mt19937_64 rng(23);
  Grammar g = parseGrammar(kCoauthorship);
  std::size_t checked = 0, outside = 0;
  for (int round = 0; round < 5; ++round) {
    auto graph = fixtures::randomAuthorItemGraph(rng, 20);
    Walker w(graph.store, V());
    auto cfg = diffusion(0.8);
    const std::string seed = graph.authors[0];
    if (!graph.store.lookup(Term::iri(seed)) ||
        graph.store.match(Term::iri(seed), std::nullopt, std::nullopt,
                          std::nullopt).size() < 2) {
      continue;
    }
    auto exact = w.execute(g, {seed}, cfg);
    cfg.mode = WalkMode::MonteCarlo;
    cfg.walkersPerSeed = 10000;
    cfg.rngSeed = 100 + round;
    auto mc = w.run(g, {seed}, cfg);
    for (const auto& e : exact) {
      ++checked;
      const double se = mc.standardErrors.count(e.resource)
                            ? mc.standardErrors.at(e.resource)
                            : 0.0;
      if (std::abs(mc.ranking.score(e.resource).value_or(0.0) - e.score) >
          3 * se + 1e-12) {
        ++outside;
      }
    }
  }
  ASSERT_GT(checked, 0u);
  EXPECT_LE(outside * 20, checked) << outside << " of " << checked;
}

TEST(WalkerTest, MonteCarloIsDeterministicForASeed) {
  std::mt19937_64 rng(24);
  auto graph = fixtures::randomAuthorItemGraph(rng);
  Walker w(graph.store, V());
  auto cfg = diffusion();
  cfg.mode = WalkMode::MonteCarlo;
  cfg.walkersPerSeed = 500;
  Grammar g = registry().load("discover-generic").bind({{"delta", "0.5"}});
  auto a = w.execute(g, {graph.items[0]}, cfg);
  auto b = w.execute(g, {graph.items[0]}, cfg);
  EXPECT_EQ(a.toText(), b.toText());
  cfg.rngSeed += 1;
  auto c = w.run(g, {graph.items[0]}, cfg);
  EXPECT_FALSE(c.ranking.empty());
}

TEST(WalkerTest, EnergyNeutralLoopStopsAtMaxSteps) {
  QuadStore store;
  link(store, "http://e.org/a", "core:cites", "http://e.org/b");
  link(store, "http://e.org/b", "core:cites", "http://e.org/a");
  Grammar g = parseGrammar(R"({"name":"ring",
    "steps":[{"predicate":"core:cites","emit":{"sign":"+"}}],
    "loop":{"backToStep":0,"decayPerLoop":1.0}})");
  Walker w(store, V());
  auto cfg = diffusion();
  cfg.maxSteps = 40;
  auto result = w.run(g, {"http://e.org/a"}, cfg);
  EXPECT_LE(result.stats.hops, 40u);
  EXPECT_NEAR(result.ranking.score("http://e.org/a").value_or(0), 20.0, 1e-9);
  EXPECT_NEAR(result.ranking.score("http://e.org/b").value_or(0), 20.0, 1e-9);
}

TEST(WalkerTest, LoopDecayTerminatesAndAccumulates) {
  QuadStore store;
  link(store, "http://e.org/a", "core:cites", "http://e.org/b");
  link(store, "http://e.org/b", "core:cites", "http://e.org/a");
  Grammar g = parseGrammar(R"({"name":"ring",
    "steps":[{"predicate":"core:cites","emit":{"sign":"+"}}],
    "loop":{"backToStep":0,"decayPerLoop":0.5}})");
  Walker w(store, V());
  auto cfg = diffusion();
  cfg.maxSteps = 1000;
  cfg.energyThreshold = 1e-6;
  auto result = w.run(g, {"http://e.org/a"}, cfg);
  EXPECT_LT(result.stats.hops, 1000u);
  // b receives 0.5 + 0.125 + ..., a receives 0.25 + 0.0625 + ...
  EXPECT_NEAR(result.ranking.score("http://e.org/b").value_or(0), 2.0 / 3.0,
              1e-5);
  EXPECT_NEAR(result.ranking.score("http://e.org/a").value_or(0), 1.0 / 3.0,
              1e-5);
}

TEST(WalkerTest, TimeDecayHalvesAtOneHalfLife) {
  QuadStore store;
  const Term user = Term::iri("http://e.org/u");
  const Term k = Term::iri("http://e.org/k");
  const Timestamp t0 = parseTimestamp("2008-10-01T00:00:00Z");
  tag(store, user, k, Term::iri("http://e.org/r"), 1.0, t0);
  Grammar g = registry().load("news").bind(
      {{"concept", "http://e.org/k"}, {"halfLife", "3600"}});
  Walker w(store, V());
  auto cfg = diffusion();
  for (double hours : {0.0, 1.0, 2.0, 3.5}) {
    cfg.now = t0 + std::chrono::milliseconds(
                       static_cast<long long>(hours * 3600 * 1000));
    auto list = w.execute(g, {"http://e.org/u"}, cfg);
    EXPECT_NEAR(list.score("http://e.org/r").value_or(0), std::exp2(-hours),
                1e-12)
        << hours;
  }
  // Tags from the future count as fresh.
  cfg.now = t0 - std::chrono::hours(5);
  EXPECT_NEAR(w.execute(g, {"http://e.org/u"}, cfg).score("http://e.org/r").value_or(0),
              1.0, 1e-12);
}

TEST(WalkerTest, WildcardSkipsSchemaEdges) {
  QuadStore store;
  typed(store, "http://e.org/a", "core:Article");
  typed(store, "http://e.org/b", "core:Article");
  link(store, "http://e.org/a", "core:cites", "http://e.org/b");
  store.insert({Term::iri("http://e.org/a"), Term::iri(ns::core("title")),
                Term::literal("A"), Term::iri("urn:test:g")});
  Grammar g = registry().load("discover-generic").bind({{"delta", "0.5"}});
  Walker w(store, V());
  auto list = w.execute(g, {"http://e.org/a"}, diffusion());
  EXPECT_TRUE(list.contains("http://e.org/b"));
  for (const auto& e : list) {
    EXPECT_FALSE(V().isTerm(e.resource)) << e.resource;
    EXPECT_TRUE(e.resource.starts_with("http://e.org/")) << e.resource;
  }
}

TEST(WalkerTest, TypeRestrictionFiltersEmits) {
  QuadStore store;
  typed(store, "http://e.org/p", "core:Person");
  typed(store, "http://e.org/g", "core:Group");
  link(store, "http://e.org/p", "core:created", "http://e.org/item");
  link(store, "http://e.org/g", "core:created", "http://e.org/item");
  link(store, "http://e.org/seed", "core:created", "http://e.org/item");
  Grammar g = parseGrammar(R"({"name":"t","steps":[
    {"predicate":"core:created"},
    {"predicate":"core:created","direction":"in",
     "filters":["exclude-previous-node"],
     "emit":{"sign":"+","type":"core:Person"}}]})");
  Walker w(store, V());
  auto list = w.execute(g, {"http://e.org/seed"}, diffusion());
  EXPECT_EQ(list.resources(), std::vector<std::string>{"http://e.org/p"});
}

TEST(RankedListTest, OrdersByScoreThenIri) {
  RankedList list({{"http://e.org/b", 1.0},
                   {"http://e.org/a", 1.0},
                   {"http://e.org/c", 2.0},
                   {"http://e.org/d", -1.0}});
  EXPECT_EQ(list.resources(),
            (std::vector<std::string>{"http://e.org/c", "http://e.org/a",
                                      "http://e.org/b", "http://e.org/d"}));
  EXPECT_EQ(list.rank("http://e.org/b"), 2u);
  EXPECT_EQ(list.positiveOnly().size(), 3u);
  EXPECT_EQ(list.truncated(1).size(), 1u);
  EXPECT_THROW(RankedList({{"x", std::nan("")}}), std::invalid_argument);
}
