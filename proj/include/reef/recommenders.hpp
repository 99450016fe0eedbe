#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "reef/grammar.hpp"
#include "reef/quad_store.hpp"
#include "reef/ranked_list.hpp"
#include "reef/time.hpp"
#include "reef/vocabulary.hpp"
#include "reef/walker.hpp"

namespace reef {

// Invalid recommender arguments (unknown return type, bad depth, ...).
class RecommendError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DiscoverRequest {
  std::vector<std::string> seeds;
  std::vector<std::string> returnTypes;  // empty: any resource
  WalkerConfig cfg;
};

struct RefereeRequest {
  std::string article;
  int maxDepthCoauthor = 2;
  double delta = 0.5;
};

struct NewsRequest {
  std::string user;
  std::string conceptIri;
  Timestamp now;
  double halfLifeSeconds = 30.0 * 24 * 3600;
};

// Weight of each composite grammar relative to the generic walk in Discover.
inline constexpr double kCompositeBoost = 2.0;

class Recommenders {
 public:
  Recommenders(const QuadStore& store, const Vocabulary& vocab,
               GrammarRegistry registry);

  // Weighted sum of the generic walk (loop decay cfg.decay) and the
  // coauthorship, co-citation, co-event and co-usage composites. Seeds, blank
  // nodes and vocabulary terms never appear in the output.
  RankedList discover(const DiscoverRequest& req) const;

  // Positive phase minus a conflict-of-interest phase; strictly positive
  // scores only. An article without citations yields an empty list.
  RankedList referees(const RefereeRequest& req,
                      WalkerConfig cfg = WalkerConfig{}) const;

  // Time-decayed walk over the concept's tags, seeded on everything the user
  // tagged with it. Never returns the user or their own tagged resources.
  RankedList news(const NewsRequest& req,
                  WalkerConfig cfg = WalkerConfig{}) const;

  // Any shipped grammar by name, parameters bound from `params`. "referee",
  // "news" and "discover" dispatch to the orchestrations above; seeds are
  // removed from the output and only positive scores are kept. Throws
  // UnknownGrammar for names without a grammar file.
  RankedList recommend(const std::string& name,
                       const std::vector<std::string>& seeds,
                       const GrammarParams& params,
                       const WalkerConfig& cfg = WalkerConfig{}) const;

  Grammar loadNamedGrammar(const std::string& name) const {
    return registry_.load(name);
  }
  const GrammarRegistry& registry() const { return registry_; }

 private:
  const QuadStore& store_;
  const Vocabulary& vocab_;
  GrammarRegistry registry_;
};

}  // namespace reef
