#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reef/grammar.hpp"
#include "reef/quad_store.hpp"
#include "reef/ranked_list.hpp"
#include "reef/time.hpp"
#include "reef/vocabulary.hpp"

namespace reef {

class WalkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A seed IRI that names no node of the store.
class UnknownSeed : public WalkError {
 public:
  using WalkError::WalkError;
};

enum class WalkMode { Diffusion, MonteCarlo };

struct WalkerConfig {
  WalkMode mode = WalkMode::Diffusion;
  std::uint32_t walkersPerSeed = 1000;
  double initialEnergy = 1.0;
  // Per-edge factor for grammars without a loop.
  double decay = 0.85;
  double energyThreshold = 1e-4;
  std::uint32_t maxSteps = 12;
  std::uint64_t rngSeed = 0x5eed;
  // Clock for time-decayed steps; the wall clock when unset.
  std::optional<Timestamp> now;

  // Throws WalkError.
  void validate() const;
};

struct WalkStatistics {
  std::uint64_t parcels = 0;  // diffusion parcels or Monte Carlo walkers
  std::uint64_t edges = 0;    // edges traversed
  std::uint32_t hops = 0;     // deepest hop reached
};

struct WalkResult {
  RankedList ranking;
  // Monte Carlo only: standard error of each score.
  std::map<std::string, double> standardErrors;
  WalkStatistics stats;
};

// Grammar-constrained walks over a read-only store.
//
// A walker at hop h executes step grammar.stepAt(h). It expands the step's
// qualifying edges, multiplies its energy by the edge factor (the step's time
// decay, else 1 for looped grammars and cfg.decay otherwise) and, when the
// step emits, adds sign * energy to the counter of each IRI target passing
// the type restriction. It then stops if the energy fell below the threshold.
// Entering the loop target multiplies the energy by the loop decay.
//
// Diffusion carries, next to the energy, the probability mass of the walker
// reaching a node: a split grammar divides the mass equally over qualifying
// edges, so diffusion scores are the exact expectation of Monte Carlo scores.
class Walker {
 public:
  Walker(const QuadStore& store, const Vocabulary& vocab);

  // Throws WalkError on empty or unknown seeds, an unbound or unknown
  // predicate, or an invalid config.
  WalkResult run(const Grammar& grammar, const std::vector<std::string>& seeds,
                 const WalkerConfig& cfg) const;
  RankedList execute(const Grammar& grammar,
                     const std::vector<std::string>& seeds,
                     const WalkerConfig& cfg) const {
    return run(grammar, seeds, cfg).ranking;
  }

 private:
  const QuadStore& store_;
  const Vocabulary& vocab_;
};

}  // namespace reef
