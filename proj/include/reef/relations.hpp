#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reef/quad_store.hpp"
#include "reef/time.hpp"

namespace reef {

// A user's graph is named by the user's own IRI.
inline Term graphOf(const Term& user) { return user; }

// A relation:related node: `owner` (the graph it lives in) relates
// `subject` (usually a concept) to `object` with a weight in [0,1].
struct Association {
  Term node;
  Term owner;
  Term subject;
  Term object;
  double weight = 1.0;
  std::optional<Timestamp> insertTime;
};

// A relation:usage node: `owner` moved from `subject` to `object` at each of
// `stamps` (non-decreasing).
struct UsageRecord {
  Term node;
  Term owner;
  Term subject;
  Term object;
  std::vector<Timestamp> stamps;
};

// Writes (or refreshes) the relation:related node for (user, concept,
// resource) in the user's graph. Re-tagging replaces weight and insertTime.
// A missing `at` defaults to the current wall-clock time. Throws
// std::invalid_argument when weight is outside [0,1].
Term tag(QuadStore& store, const Term& user, const Term& conceptTerm,
         const Term& resource, double weight,
         std::optional<Timestamp> at = std::nullopt);

// The five quads of a relation:related node, as written by tag().
std::vector<Quad> associationQuads(const Term& owner, const Term& conceptTerm,
                                   const Term& resource, double weight,
                                   Timestamp at);

// Records a view transition from -> to for `user`. Returns nullopt for a
// self-transition, which records nothing.
std::optional<Term> recordUsage(QuadStore& store, const Term& user,
                                const Term& from, const Term& to,
                                Timestamp at);

// Deterministic blank node labels: one node per (owner, subject, object).
std::string associationLabel(const Term& owner, const Term& subject,
                             const Term& object);
std::string usageLabel(const Term& owner, const Term& subject,
                       const Term& object);

// All relation:related nodes, optionally restricted to one owner graph,
// sorted by (owner, subject, object).
std::vector<Association> associations(
    const QuadStore& store, const std::optional<Term>& owner = std::nullopt);
std::vector<UsageRecord> usageRecords(
    const QuadStore& store, const std::optional<Term>& owner = std::nullopt);

std::vector<Timestamp> parseUsageStamps(const std::string& lexical);
std::string formatUsageStamps(const std::vector<Timestamp>& stamps);

// Shortest round-trip decimal form used for core:weight literals.
std::string formatDouble(double value);

}  // namespace reef
