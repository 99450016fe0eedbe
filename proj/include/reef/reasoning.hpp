#pragma once

#include <set>
#include <string>
#include <vector>

#include "reef/quad.hpp"
#include "reef/quad_store.hpp"
#include "reef/vocabulary.hpp"

namespace reef {

// rdf:type objects asserted for `resource` in any graph.
std::set<std::string> assertedTypes(const QuadStore& store,
                                    const Term& resource);

// True iff some asserted type of `resource` has `cls` in its subclass
// closure. Only the rdfs:subClassOf rule participates; domain and range
// declarations never entail types. Every resource is an owl:Thing.
bool isInstance(const QuadStore& store, const Vocabulary& vocab,
                const Term& resource, const std::string& cls);

// The asserted type with the deepest closure, ties broken lexicographically.
// Empty when the resource is untyped.
std::string mostSpecificType(const QuadStore& store, const Vocabulary& vocab,
                             const Term& resource);

// Writes the rdfs:subClassOf (type propagation) and rdfs:subPropertyOf
// (statement propagation) entailments of the store into `inferenceGraph`.
// Returns the number of new quads.
std::size_t materializeEntailments(QuadStore& store, const Vocabulary& vocab,
                                   const Term& inferenceGraph);

// Human-readable warnings when a quad's subject or IRI object carries types
// outside the declared domain/range. Untyped resources produce no warning.
std::vector<std::string> domainRangeWarnings(const QuadStore& store,
                                             const Vocabulary& vocab,
                                             const Quad& quad);

}  // namespace reef
