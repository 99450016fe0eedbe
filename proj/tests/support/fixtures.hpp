#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "reef/quad_store.hpp"
#include "reef/time.hpp"

namespace reef::fixtures {

std::filesystem::path fixturePath(const std::string& name);
std::string readFixture(const std::string& name);

// Resources of the News example graph.
std::string krs(const std::string& local);
QuadStore newsExampleStore();
// A clock a few days after the last tag of the News example.
Timestamp newsExampleNow();

// <s p o g> with CURIE or absolute IRIs; g defaults to a test graph.
void link(QuadStore& store, const std::string& s, const std::string& p,
          const std::string& o, const std::string& g = "urn:test:g");
void typed(QuadStore& store, const std::string& s, const std::string& cls,
           const std::string& g = "urn:test:g");
std::string node(const std::string& kind, std::size_t i);

struct AuthorItemGraph {
  QuadStore store;
  std::vector<std::string> authors;
  std::vector<std::string> items;
};
// Persons created Articles; at most `maxNodes` nodes in total.
AuthorItemGraph randomAuthorItemGraph(std::mt19937_64& rng,
                                      std::size_t maxNodes = 50);

struct CitationFixture {
  QuadStore store;
  std::string article;
  std::vector<std::string> agents;
  std::vector<std::string> articles;
};
// Authorship plus citations; `article` cites at least one other article.
CitationFixture randomCitationFixture(std::mt19937_64& rng);

}  // namespace reef::fixtures
