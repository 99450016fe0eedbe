#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reef/namespaces.hpp"
#include "reef/nquads.hpp"

namespace reef::fixtures {

std::filesystem::path fixturePath(const std::string& name) {
  return std::filesystem::path(REEF_FIXTURE_DIR) / name;
}

std::string readFixture(const std::string& name) {
  std::ifstream in(fixturePath(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string krs(const std::string& local) {
  return "http://reef.example.org/krs/" + local;
}

QuadStore newsExampleStore() {
  QuadStore store;
  loadNQuads(store, readFixture("news_example.nq"));
  return store;
}

Timestamp newsExampleNow() { return parseTimestamp("2008-10-10T00:00:00Z"); }

namespace {
Term iriOf(const std::string& s) {
  auto iri = ns::expand(s);
  if (!iri) throw std::invalid_argument("bad test IRI " + s);
  return Term::iri(*iri);
}
}  // namespace

void link(QuadStore& store, const std::string& s, const std::string& p,
          const std::string& o, const std::string& g) {
  store.insert({iriOf(s), iriOf(p), iriOf(o), iriOf(g)});
}

void typed(QuadStore& store, const std::string& s, const std::string& cls,
           const std::string& g) {
  link(store, s, "rdf:type", cls, g);
}

std::string node(const std::string& kind, std::size_t i) {
  return "http://reef.example.org/test/" + kind + std::to_string(i);
}

AuthorItemGraph randomAuthorItemGraph(std::mt19937_64& rng,
                                      std::size_t maxNodes) {
  AuthorItemGraph out;
  std::uniform_int_distribution<std::size_t> authorCount(2, maxNodes / 2);
  const std::size_t nAuthors = authorCount(rng);
  std::uniform_int_distribution<std::size_t> itemCount(1, maxNodes - nAuthors);
  const std::size_t nItems = itemCount(rng);
  for (std::size_t a = 0; a < nAuthors; ++a) {
    out.authors.push_back(node("author", a));
    typed(out.store, out.authors.back(), "core:Person");
  }
  std::uniform_int_distribution<std::size_t> pickAuthor(0, nAuthors - 1);
  std::uniform_int_distribution<std::size_t> perItem(1, 4);
  for (std::size_t i = 0; i < nItems; ++i) {
    out.items.push_back(node("item", i));
    typed(out.store, out.items.back(), "core:Article");
    const std::size_t k = perItem(rng);
    for (std::size_t j = 0; j < k; ++j) {
      link(out.store, out.authors[pickAuthor(rng)], "core:created",
           out.items.back());
    }
  }
  return out;
}

CitationFixture randomCitationFixture(std::mt19937_64& rng) {
  CitationFixture out;
  std::uniform_int_distribution<std::size_t> agentCount(4, 16);
  std::uniform_int_distribution<std::size_t> articleCount(3, 16);
  const std::size_t nAgents = agentCount(rng);
  const std::size_t nArticles = articleCount(rng);
  for (std::size_t a = 0; a < nAgents; ++a) {
    out.agents.push_back(node("agent", a));
    typed(out.store, out.agents.back(), "core:Person");
  }
  std::uniform_int_distribution<std::size_t> pickAgent(0, nAgents - 1);
  std::uniform_int_distribution<std::size_t> pickArticle(0, nArticles - 1);
  std::uniform_int_distribution<std::size_t> authorsPer(1, 3);
  std::uniform_int_distribution<std::size_t> citesPer(0, 3);
  for (std::size_t i = 0; i < nArticles; ++i) {
    out.articles.push_back(node("article", i));
    typed(out.store, out.articles.back(), "core:Article");
    const std::size_t k = authorsPer(rng);
    for (std::size_t j = 0; j < k; ++j) {
      link(out.store, out.agents[pickAgent(rng)], "core:created",
           out.articles.back());
    }
  }
  for (std::size_t i = 0; i < nArticles; ++i) {
    const std::size_t k = citesPer(rng);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t t = pickArticle(rng);
      if (t != i) link(out.store, out.articles[i], "core:cites", out.articles[t]);
    }
  }
  out.article = out.articles[0];
  std::size_t target = pickArticle(rng);
  if (target == 0) target = 1;
  link(out.store, out.article, "core:cites", out.articles[target]);
  return out;
}

}  // namespace reef::fixtures
