#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reef {

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGrammar : public GrammarError {
 public:
  using GrammarError::GrammarError;
};

// Predicate value matching every non-schema object property.
inline constexpr const char* kAnyPredicate = "*";

enum class StepDirection { Out, In, Both };

// Which end of a relation:related / relation:usage node a step walks from.
// Subject: subject -> object (concept -> tagged resource, or viewed i -> j).
// Owner: graph owner -> object ("user u tagged x").
enum class AssociationTail { Subject, Owner };

struct StepFilter {
  enum class Kind {
    ExcludePreviousNode,
    ExcludeSeeds,
    NotSelf,
    RequireType,
    RequireTagConcept,
  };
  Kind kind;
  std::string iri;  // RequireType / RequireTagConcept; may be a "$param"
};

struct Emit {
  int sign = +1;
  std::optional<std::string> typeRestriction;
};

// Per-edge factor 2^(-Δ/σ) with Δ = now - core:insertTime of the traversed
// relation:related node.
struct TimeDecay {
  double halfLifeSeconds = 0.0;
  std::string halfLifeParam;  // set while the half-life is an unbound "$param"
};

struct GrammarStep {
  std::string predicate;  // IRI, kAnyPredicate, or "$param"
  StepDirection direction = StepDirection::Out;
  AssociationTail tail = AssociationTail::Subject;
  std::vector<StepFilter> filters;
  std::optional<Emit> emit;
  std::optional<TimeDecay> timeDecay;

  bool has(StepFilter::Kind kind) const;
};

// After the last step the walk continues at `backToStep`. Every entry into
// `backToStep` (including the first) multiplies the walker energy by
// `decayPerLoop`; `maxPasses` bounds how many times that step may be entered.
struct GrammarLoop {
  std::size_t backToStep = 0;
  double decayPerLoop = 1.0;
  std::optional<std::size_t> maxPasses;
  // Names of unbound "$param" values for the two fields above.
  std::string decayParam;
  std::string maxPassesParam;
};

using GrammarParams = std::map<std::string, std::string>;

struct Grammar {
  std::string name;
  std::string description;
  bool experimental = false;
  // false: diffusion hands every qualifying edge the full parcel mass instead
  // of an equal share, and Monte Carlo walkers fork.
  bool split = true;
  std::vector<GrammarStep> steps;
  std::optional<GrammarLoop> loop;

  // Throws GrammarError on structural problems (empty, bad loop target,
  // decay outside [0,1], unknown filters for the step kind).
  void validate() const;

  // Replaces "$name" placeholders. Unbound placeholders are left in place.
  Grammar bind(const GrammarParams& params) const;
  bool fullyBound() const;

  // The step executed at hop `hop` (0-based), or nullopt once the grammar
  // is exhausted (no loop, or loop passes used up).
  std::optional<std::size_t> stepAt(std::size_t hop) const;
};

// JSON grammar file format; CURIEs (core:, relation:, rdf:, ...) are
// expanded. Throws GrammarError.
Grammar parseGrammar(const std::string& json);
std::string grammarToJson(const Grammar& grammar);

// Grammar files named <name>.json in one directory.
class GrammarRegistry {
 public:
  explicit GrammarRegistry(std::filesystem::path directory);

  // $REEF_GRAMMAR_DIR if set, else the directory the project was built with.
  static GrammarRegistry fromEnvironment();

  // Throws UnknownGrammar when there is no such file, GrammarError when the
  // file does not parse or validate.
  Grammar load(const std::string& name) const;
  std::vector<std::string> names() const;
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace reef
