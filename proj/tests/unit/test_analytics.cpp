#include <random>
#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "reef/analytics.hpp"
#include "reef/namespaces.hpp"
#include "reef/relations.hpp"

using namespace reef;
using fixtures::link;

namespace {

std::string E(const std::string& local) { return "http://e.org/" + local; }
Term T(const std::string& local) { return Term::iri(E(local)); }

void dated(QuadStore& s, const std::string& item, const std::string& when) {
  s.insert({T(item), Term::iri(ns::core("creationTime")),
            Term::literal(when, ns::xsd("dateTime")), Term::iri("urn:test:g")});
}

// Brute force: test every candidate h against the definition.
std::size_t bruteH(std::vector<std::size_t> c) {
  std::size_t best = 0;
  for (std::size_t h = 0; h <= c.size(); ++h) {
    std::size_t atLeast = 0;
    for (auto x : c) atLeast += x >= h ? 1 : 0;
    if (atLeast >= h) best = h;
  }
  return best;
}

}  // namespace

TEST(AnalyticsTest, HIndexExamples) {
  EXPECT_EQ(hIndexOf({6, 5, 3, 1, 0}), 3u);
  EXPECT_EQ(hIndexOf({}), 0u);
  EXPECT_EQ(hIndexOf({0, 0}), 0u);
  EXPECT_EQ(hIndexOf({10, 10, 10}), 3u);
  EXPECT_EQ(hIndexOf({1}), 1u);
}

TEST(AnalyticsTest, CitationCounts) {
  QuadStore s;
  link(s, E("a"), "core:cites", E("x"));
  link(s, E("b"), "core:cites", E("x"));
  link(s, E("b"), "core:cites", E("x"), "urn:test:other");
  link(s, E("x"), "core:cites", E("x"));
  EXPECT_EQ(citationCount(s, T("x")), 3u);
  EXPECT_EQ(citationCount(s, T("a")), 0u);
  EXPECT_EQ(citationCount(s, T("unknown")), 0u);
}

TEST(AnalyticsTest, HIndexOfAnAgent) {
  QuadStore s;
  for (int i = 0; i < 4; ++i) {
    link(s, E("author"), "core:created", E("p" + std::to_string(i)));
  }
  // p0 cited 3x, p1 2x, p2 1x, p3 0x -> h = 2
  for (int c = 0; c < 3; ++c) link(s, E("c" + std::to_string(c)), "core:cites", E("p0"));
  for (int c = 0; c < 2; ++c) link(s, E("c" + std::to_string(c)), "core:cites", E("p1"));
  link(s, E("c0"), "core:cites", E("p2"));
  EXPECT_EQ(hIndex(s, T("author")), 2u);
  EXPECT_EQ(hIndex(s, T("nobody")), 0u);
}

TEST(AnalyticsTest, CoUsage) {
  QuadStore s;
  EXPECT_EQ(coUsage(s, T("i"), T("j")), 0u);
  const Timestamp t = parseTimestamp("2009-01-01");
  recordUsage(s, T("u"), T("i"), T("j"), t);
  recordUsage(s, T("u"), T("i"), T("j"), t + std::chrono::seconds(1));
  EXPECT_EQ(coUsage(s, T("i"), T("j")), 2u);
  QuadStore two;
  recordUsage(two, T("u1"), T("i"), T("j"), t);
  recordUsage(two, T("u2"), T("j"), T("i"), t);
  EXPECT_EQ(coUsage(two, T("i"), T("j")), 2u);
  EXPECT_EQ(coUsage(two, T("i"), T("k")), 0u);
}

TEST(AnalyticsTest, ImpactFactorTenCitationsOverFiveItems) {
  QuadStore s;
  for (int i = 0; i < 5; ++i) {
    const std::string item = "item" + std::to_string(i);
    link(s, E("journal"), "core:contains", E(item));
    dated(s, item, i < 3 ? "2006-05-01T00:00:00Z" : "2007-05-01T00:00:00Z");
  }
  for (int c = 0; c < 10; ++c) {
    const std::string citer = "citer" + std::to_string(c);
    dated(s, citer, "2008-03-01T00:00:00Z");
    link(s, E(citer), "core:cites", E("item" + std::to_string(c % 5)));
  }
  // A citation from the wrong year is ignored.
  dated(s, "late", "2009-03-01T00:00:00Z");
  link(s, E("late"), "core:cites", E("item0"));
  EXPECT_DOUBLE_EQ(impactFactor(s, T("journal"), 2008), 2.0);
  EXPECT_DOUBLE_EQ(impactFactor(s, T("journal"), 2012), 0.0);
}

TEST(AnalyticsTest, ImpactFactorSingleItemViaContainedIn) {
  QuadStore s;
  link(s, E("item"), "core:containedIn", E("proc"));
  dated(s, "item", "2007-01-01T00:00:00Z");
  dated(s, "citer", "2008-01-01T00:00:00Z");
  link(s, E("citer"), "core:cites", E("item"));
  EXPECT_DOUBLE_EQ(impactFactor(s, T("proc"), 2008), 1.0);
}

TEST(AnalyticsTest, MetricReportJson) {
  QuadStore s;
  link(s, E("a"), "core:cites", E("x"));
  auto r = computeMetric(s, parseMetric("citation_count"), E("x"));
  auto j = nlohmann::json::parse(r.toJson());
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["metric"], "citation_count");
  EXPECT_EQ(j["value"], 1.0);
  auto ifr = computeMetric(s, Metric::ImpactFactor, E("x"), {}, 2008);
  auto ij = nlohmann::json::parse(ifr.toJson());
  EXPECT_TRUE(ij.contains("window"));
  EXPECT_THROW(parseMetric("g_index"), std::invalid_argument);
  EXPECT_THROW(computeMetric(s, Metric::CoUsage, E("x")), std::invalid_argument);
  EXPECT_THROW(computeMetric(s, Metric::ImpactFactor, E("x")),
               std::invalid_argument);
  for (auto m : {Metric::HIndex, Metric::CitationCount, Metric::CoUsage,
                 Metric::ImpactFactor}) {
    EXPECT_EQ(parseMetric(metricName(m)), m);
  }
}

TEST(AnalyticsProperty, MetricsMatchBruteForce) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 30; ++round) {
    auto f = fixtures::randomCitationFixture(rng);
    const auto all = f.store.all();
    for (const auto& article : f.articles) {
      std::set<std::string> citers;
      for (const auto& q : all) {
        if (q.predicate.value() == ns::core("cites") && q.object.value() == article) {
          citers.insert(q.subject.value());
        }
      }
      EXPECT_EQ(citationCount(f.store, Term::iri(article)), citers.size());
    }
    for (const auto& agent : f.agents) {
      std::vector<std::size_t> counts;
      for (const auto& q : all) {
        if (q.subject.value() == agent && q.predicate.value() == ns::core("created")) {
          std::set<std::string> citers;
          for (const auto& c : all) {
            if (c.predicate.value() == ns::core("cites") && c.object == q.object) {
              citers.insert(c.subject.value());
            }
          }
          counts.push_back(citers.size());
        }
      }
      EXPECT_EQ(hIndex(f.store, Term::iri(agent)), bruteH(counts));
      EXPECT_EQ(hIndexOf(counts), bruteH(counts));
    }
  }
  for (int round = 0; round < 50; ++round) {
    std::vector<std::size_t> c(std::uniform_int_distribution<int>(0, 20)(rng));
    for (auto& x : c) x = std::uniform_int_distribution<std::size_t>(0, 25)(rng);
    EXPECT_EQ(hIndexOf(c), bruteH(c));
  }
}

TEST(AnalyticsProperty, CoUsageMatchesStampCount) {
  std::mt19937_64 rng(42);
  QuadStore s;
  std::map<std::pair<int, int>, std::size_t> model;
  const Timestamp t = parseTimestamp("2009-01-01");
  for (int k = 0; k < 300; ++k) {
    int u = std::uniform_int_distribution<int>(0, 3)(rng);
    int i = std::uniform_int_distribution<int>(0, 5)(rng);
    int j = std::uniform_int_distribution<int>(0, 5)(rng);
    recordUsage(s, T("u" + std::to_string(u)), T("r" + std::to_string(i)),
                T("r" + std::to_string(j)), t + std::chrono::seconds(k));
    if (i != j) ++model[{std::min(i, j), std::max(i, j)}];
  }
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      EXPECT_EQ(coUsage(s, T("r" + std::to_string(i)), T("r" + std::to_string(j))),
                (model[{i, j}]));
    }
  }
}
