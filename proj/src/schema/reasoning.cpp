#include "reef/reasoning.hpp"

#include "reef/namespaces.hpp"

namespace reef {

namespace {

const Term& rdfType() {
  static const Term t = Term::iri(ns::rdf("type"));
  return t;
}

std::set<std::string> closureOrSelf(const Vocabulary& vocab,
                                    const std::string& cls) {
  if (vocab.isClass(cls)) return vocab.subclassClosure(cls);
  return {cls};
}

}  // namespace

std::set<std::string> assertedTypes(const QuadStore& store,
                                    const Term& resource) {
  std::set<std::string> out;
  if (resource.isLiteral()) return out;
  for (const auto& t : store.neighbors(resource, rdfType(), Direction::Out)) {
    if (t.isIri()) out.insert(t.value());
  }
  return out;
}

bool isInstance(const QuadStore& store, const Vocabulary& vocab,
                const Term& resource, const std::string& cls) {
  if (resource.isLiteral()) return false;
  if (cls == ns::owl("Thing")) return true;
  for (const auto& t : assertedTypes(store, resource)) {
    if (closureOrSelf(vocab, t).contains(cls)) return true;
  }
  return false;
}

std::string mostSpecificType(const QuadStore& store, const Vocabulary& vocab,
                             const Term& resource) {
  std::string best;
  std::size_t bestDepth = 0;
  for (const auto& t : assertedTypes(store, resource)) {
    std::size_t depth = closureOrSelf(vocab, t).size();
    if (best.empty() || depth > bestDepth) {
      best = t;
      bestDepth = depth;
    }
  }
  return best;
}

std::size_t materializeEntailments(QuadStore& store, const Vocabulary& vocab,
                                   const Term& inferenceGraph) {
  std::size_t added = 0;
  // Iterate to a fixpoint: subproperty entailment can create new rdf:type
  // statements (when a property is declared under rdf:type) and vice versa.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Quad> pending;
    for (const auto& q : store.match(std::nullopt, rdfType(), std::nullopt,
                                     std::nullopt)) {
      if (!q.object.isIri() || !vocab.isClass(q.object.value())) continue;
      for (const auto& super : vocab.subclassClosure(q.object.value())) {
        pending.push_back({q.subject, rdfType(), Term::iri(super),
                           inferenceGraph});
      }
    }
    for (const auto& p : vocab.properties()) {
      if (vocab.superProperties(p).empty()) continue;
      for (const auto& q : store.match(std::nullopt, Term::iri(p),
                                       std::nullopt, std::nullopt)) {
        for (const auto& super : vocab.subpropertyClosure(p)) {
          if (super == p) continue;
          pending.push_back({q.subject, Term::iri(super), q.object,
                             inferenceGraph});
        }
      }
    }
    for (const auto& q : pending) {
      // Skip statements already asserted in some other graph.
      if (!store.match(q.subject, q.predicate, q.object, std::nullopt)
               .empty()) {
        continue;
      }
      if (store.insert(q) == InsertResult::Inserted) {
        ++added;
        changed = true;
      }
    }
  }
  return added;
}

std::vector<std::string> domainRangeWarnings(const QuadStore& store,
                                             const Vocabulary& vocab,
                                             const Quad& quad) {
  std::vector<std::string> warnings;
  if (!vocab.isProperty(quad.predicate.value())) return warnings;
  const auto& info = vocab.property(quad.predicate.value());
  auto check = [&](const Term& t, const std::string& expected,
                   const char* role) {
    if (expected.empty() || !vocab.isClass(expected)) return;
    auto types = assertedTypes(store, t);
    if (types.empty()) return;
    if (!isInstance(store, vocab, t, expected)) {
      warnings.push_back(t.toNQuads() + " used as " + role + " of " +
                         ns::compact(quad.predicate.value()) +
                         " but is not a " + ns::compact(expected));
    }
  };
  check(quad.subject, info.domain, "subject");
  if (!quad.object.isLiteral()) check(quad.object, info.range, "object");
  return warnings;
}

}  // namespace reef
