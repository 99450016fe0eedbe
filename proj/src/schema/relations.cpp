#include "reef/relations.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>

#include "reef/hash.hpp"
#include "reef/namespaces.hpp"

namespace reef {

namespace {

struct Vocab {
  Term type = Term::iri(ns::rdf("type"));
  Term related = Term::iri(ns::relation("related"));
  Term usage = Term::iri(ns::relation("usage"));
  Term subject = Term::iri(ns::core("subject"));
  Term object = Term::iri(ns::core("object"));
  Term weight = Term::iri(ns::core("weight"));
  Term insertTime = Term::iri(ns::core("insertTime"));
  Term usageStamps = Term::iri(ns::core("usageStamps"));
};

const Vocab& v() {
  static const Vocab vocab;
  return vocab;
}

std::string labelFor(std::string_view kind, const Term& owner,
                     const Term& subject, const Term& object) {
  std::string key = owner.toNQuads();
  key += '\x1f';
  key += subject.toNQuads();
  key += '\x1f';
  key += object.toNQuads();
  return std::string(kind) + hex64(fnv1a64(key));
}

void replaceValue(QuadStore& store, const Term& node, const Term& predicate,
                  const Term& graph, const Term& value) {
  for (const auto& q : store.match(node, predicate, std::nullopt, graph)) {
    store.remove(q);
  }
  store.insert({node, predicate, value, graph});
}

std::optional<Term> single(const QuadStore& store, const Term& node,
                           const Term& predicate, const Term& graph) {
  auto quads = store.match(node, predicate, std::nullopt, graph);
  if (quads.empty()) return std::nullopt;
  return quads.front().object;
}

}  // namespace

std::string formatDouble(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string associationLabel(const Term& owner, const Term& subject,
                             const Term& object) {
  return labelFor("rel", owner, subject, object);
}

std::string usageLabel(const Term& owner, const Term& subject,
                       const Term& object) {
  return labelFor("use", owner, subject, object);
}

Term tag(QuadStore& store, const Term& user, const Term& conceptTerm,
         const Term& resource, double weight, std::optional<Timestamp> at) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("tag weight must lie in [0,1], got " +
                                formatDouble(weight));
  }
  if (!user.isResource() || !conceptTerm.isResource() || !resource.isResource()) {
    throw std::invalid_argument("tag endpoints must be IRIs or blank nodes");
  }
  const Term g = graphOf(user);
  auto quads = associationQuads(g, conceptTerm, resource, weight,
                                at.value_or(now()));
  const Term& node = quads.front().subject;
  for (const auto& q : quads) {
    if (q.predicate == v().weight || q.predicate == v().insertTime) {
      replaceValue(store, node, q.predicate, g, q.object);
    } else {
      store.insert(q);
    }
  }
  return node;
}

std::vector<Quad> associationQuads(const Term& owner, const Term& conceptTerm,
                                   const Term& resource, double weight,
                                   Timestamp at) {
  const Term node = Term::blank(associationLabel(owner, conceptTerm, resource));
  return {
      {node, v().type, v().related, owner},
      {node, v().subject, conceptTerm, owner},
      {node, v().object, resource, owner},
      {node, v().weight, Term::literal(formatDouble(weight), ns::xsd("float")),
       owner},
      {node, v().insertTime,
       Term::literal(formatTimestamp(at), ns::xsd("dateTime")), owner},
  };
}

std::vector<Timestamp> parseUsageStamps(const std::string& lexical) {
  std::vector<Timestamp> out;
  std::istringstream in(lexical);
  std::string token;
  while (in >> token) out.push_back(parseTimestamp(token));
  return out;
}

std::string formatUsageStamps(const std::vector<Timestamp>& stamps) {
  std::string out;
  for (const auto& t : stamps) {
    if (!out.empty()) out += ' ';
    out += formatTimestamp(t);
  }
  return out;
}

std::optional<Term> recordUsage(QuadStore& store, const Term& user,
                                const Term& from, const Term& to,
                                Timestamp at) {
  if (from == to) return std::nullopt;
  const Term g = graphOf(user);
  const Term node = Term::blank(usageLabel(g, from, to));
  std::vector<Timestamp> stamps;
  if (auto existing = single(store, node, v().usageStamps, g)) {
    stamps = parseUsageStamps(existing->value());
  }
  // Out-of-order calls still keep the list sorted.
  stamps.insert(std::upper_bound(stamps.begin(), stamps.end(), at), at);
  store.insert({node, v().type, v().usage, g});
  store.insert({node, v().subject, from, g});
  store.insert({node, v().object, to, g});
  replaceValue(store, node, v().usageStamps, g,
               Term::literal(formatUsageStamps(stamps)));
  return node;
}

std::vector<Association> associations(const QuadStore& store,
                                      const std::optional<Term>& owner) {
  std::vector<Association> out;
  for (const auto& q :
       store.match(std::nullopt, v().type, v().related, owner)) {
    auto subject = single(store, q.subject, v().subject, q.graph);
    auto object = single(store, q.subject, v().object, q.graph);
    if (!subject || !object) continue;
    Association a{q.subject, q.graph, *subject, *object, 1.0, std::nullopt};
    if (auto w = single(store, q.subject, v().weight, q.graph)) {
      a.weight = std::stod(w->value());
    }
    if (auto t = single(store, q.subject, v().insertTime, q.graph)) {
      a.insertTime = parseTimestamp(t->value());
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.owner, a.subject, a.object) <
           std::tie(b.owner, b.subject, b.object);
  });
  return out;
}

std::vector<UsageRecord> usageRecords(const QuadStore& store,
                                      const std::optional<Term>& owner) {
  std::vector<UsageRecord> out;
  for (const auto& q : store.match(std::nullopt, v().type, v().usage, owner)) {
    auto subject = single(store, q.subject, v().subject, q.graph);
    auto object = single(store, q.subject, v().object, q.graph);
    if (!subject || !object) continue;
    UsageRecord r{q.subject, q.graph, *subject, *object, {}};
    if (auto s = single(store, q.subject, v().usageStamps, q.graph)) {
      r.stamps = parseUsageStamps(s->value());
    }
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.owner, a.subject, a.object) <
           std::tie(b.owner, b.subject, b.object);
  });
  return out;
}

}  // namespace reef
