#include "reef/translate.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "reef/hash.hpp"
#include "reef/namespaces.hpp"
#include "reef/relations.hpp"
#include "reef/time.hpp"

namespace reef {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

std::string collapseSpaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

const char* kindName(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Article: return "article";
    case ResourceKind::Person: return "person";
    case ResourceKind::Concept: return "concept";
  }
  return "resource";
}

// dc:type values are free text; only a handful map to something more
// specific than core:Article.
std::string classForType(const std::optional<std::string>& typeTag) {
  if (!typeTag) return ns::core("Article");
  auto t = normalizeLabel(*typeTag);
  if (t == "software") return ns::core("Software");
  if (t == "dataset") return ns::core("Dataset");
  if (t == "book") return ns::core("Book");
  return ns::core("Article");
}

std::optional<Timestamp> tryParse(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  try {
    return parseTimestamp(*s);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::string normalizeLabel(std::string_view text) {
  std::string out;
  bool space = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      space = !out.empty();
      continue;
    }
    if (std::ispunct(c)) continue;
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
  }
  return out;
}

std::string dedupKey(const ResourceFields& fields) {
  switch (fields.kind) {
    case ResourceKind::Article:
      if (!fields.guid.empty()) return "article|guid|" + trim(fields.guid);
      return "article|title|" + normalizeLabel(fields.title) + "|" +
             normalizeLabel(fields.type);
    case ResourceKind::Person:
      return "person|" + normalizeLabel(fields.name);
    case ResourceKind::Concept:
      return "concept|" + normalizeLabel(fields.title);
  }
  return {};
}

Term resourceIri(ResourceKind kind, const std::string& key) {
  return Term::iri(std::string(ns::kResourceBase) + kindName(kind) + "/" +
                   hex64(fnv1a64(key)));
}

PersonName splitName(std::string_view name) {
  std::string clean = collapseSpaces(name);
  PersonName out;
  auto comma = clean.find(',');
  if (comma == std::string::npos) {
    out.lastName = clean;
    out.display = clean;
    return out;
  }
  out.lastName = trim(std::string_view(clean).substr(0, comma));
  out.firstName = trim(std::string_view(clean).substr(comma + 1));
  out.display = out.firstName.empty() ? out.lastName
                                      : out.firstName + " " + out.lastName;
  return out;
}

std::vector<Quad> translate(const DCRecord& record, const Term& providerGraph) {
  const Term& g = providerGraph;
  const Term type = Term::iri(ns::rdf("type"));
  auto p = [](const char* local) { return Term::iri(ns::core(local)); };
  std::vector<Quad> out;

  const std::string articleClass = classForType(record.typeTag);
  ResourceFields articleFields{ResourceKind::Article, record.identifier,
                               record.title, articleClass, {}};
  const Term article =
      resourceIri(ResourceKind::Article, dedupKey(articleFields));
  out.push_back({article, type, Term::iri(articleClass), g});
  if (!record.title.empty()) {
    out.push_back({article, p("title"), Term::literal(record.title), g});
  }
  if (!record.description.empty()) {
    out.push_back(
        {article, p("abstract"), Term::literal(record.description), g});
  }
  if (record.url) {
    out.push_back({article, p("url"),
                   Term::literal(*record.url, ns::xsd("anyURI")), g});
  }
  if (!record.identifier.empty()) {
    out.push_back({article, p("guid"), Term::literal(record.identifier), g});
  }
  if (auto created = tryParse(record.date)) {
    out.push_back({article, p("creationTime"),
                   Term::literal(formatTimestamp(*created),
                                 ns::xsd("dateTime")),
                   g});
  }

  for (const auto& creator : record.creators) {
    ResourceFields fields{ResourceKind::Person, {}, {}, {}, creator};
    const Term person = resourceIri(ResourceKind::Person, dedupKey(fields));
    PersonName name = splitName(creator);
    out.push_back({person, type, Term::iri(ns::core("Person")), g});
    out.push_back({person, p("title"), Term::literal(name.display), g});
    if (!name.firstName.empty()) {
      out.push_back({person, p("firstName"), Term::literal(name.firstName), g});
    }
    out.push_back({person, p("lastName"), Term::literal(name.lastName), g});
    out.push_back({person, p("created"), article, g});
  }

  // Provider tags are stamped with the record datestamp so re-harvesting the
  // same record reproduces the same quads.
  Timestamp tagTime = tryParse(record.datestamp)
                          .value_or(tryParse(record.date).value_or(now()));
  for (const auto& subject : record.subjects) {
    ResourceFields fields{ResourceKind::Concept, {}, subject, {}, {}};
    const Term conceptTerm = resourceIri(ResourceKind::Concept, dedupKey(fields));
    out.push_back({conceptTerm, type, Term::iri(ns::core("Concept")), g});
    out.push_back({conceptTerm, p("title"), Term::literal(subject), g});
    for (auto& q : associationQuads(g, conceptTerm, article, 1.0, tagTime)) {
      out.push_back(std::move(q));
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IngestStats ingest(QuadStore& store, const std::vector<DCRecord>& records,
                   const Term& providerGraph) {
  IngestStats stats;
  const Term type = Term::iri(ns::rdf("type"));
  for (const auto& record : records) {
    ++stats.records;
    auto quads = translate(record, providerGraph);
    std::set<Term> fresh;
    for (const auto& q : quads) {
      if (q.predicate == type && q.subject.isIri() &&
          store.match(q.subject, type, std::nullopt, std::nullopt).empty()) {
        fresh.insert(q.subject);
      }
    }
    stats.resourcesAdded += fresh.size();
    for (const auto& q : quads) {
      if (store.insert(q) == InsertResult::Inserted) ++stats.quadsAdded;
    }
  }
  return stats;
}

}  // namespace reef
