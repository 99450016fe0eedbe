#include "reef/vocabulary.hpp"

#include <algorithm>
#include <deque>

#include "reef/namespaces.hpp"

namespace reef {

namespace {

const std::vector<std::string> kNoParents;

struct ClassRow {
  const char* name;
  const char* parent;
  const char* abbrev;
};

// Class tree. owl:Thing is the only root; every core class sits under
// core:Reefsource.
constexpr ClassRow kClasses[] = {
    {"core:Reefsource", "owl:Thing", "Rs"},
    {"core:Agent", "core:Reefsource", "Ag"},
    {"core:Person", "core:Agent", "Pe"},
    {"core:Group", "core:Agent", "Gr"},
    {"core:Institution", "core:Group", "In"},
    {"core:Item", "core:Reefsource", "It"},
    {"core:Document", "core:Item", "Do"},
    {"core:Article", "core:Document", "Ar"},
    {"core:Book", "core:Document", "Bk"},
    {"core:Webpage", "core:Document", "Wp"},
    {"core:Software", "core:Item", "Sw"},
    {"core:Dataset", "core:Item", "Ds"},
    {"core:Collection", "core:Item", "Co"},
    {"core:Journal", "core:Collection", "Jo"},
    {"core:Proceedings", "core:Collection", "Pr"},
    {"core:Library", "core:Collection", "Li"},
    {"core:Call", "core:Item", "Ca"},
    {"core:CallForPapers", "core:Call", "Cp"},
    {"core:FundingOpportunity", "core:Call", "Fo"},
    {"core:Event", "core:Reefsource", "Ev"},
    {"core:Conference", "core:Event", "Cf"},
    {"core:Workshop", "core:Event", "Ws"},
    {"core:Session", "core:Event", "Se"},
    {"core:Concept", "core:Reefsource", "Cn"},
    {"core:Gender", "core:Reefsource", "Ge"},
    {"relation:related", "core:Reefsource", "Re"},
    {"relation:usage", "core:Reefsource", "Us"},
};

struct PropertyRow {
  const char* name;
  const char* domain;
  const char* range;
};

constexpr PropertyRow kProperties[] = {
    // core:Reefsource
    {"core:title", "core:Reefsource", "xsd:string"},
    {"core:abstract", "core:Reefsource", "xsd:string"},
    {"core:guid", "core:Reefsource", "xsd:string"},
    {"core:url", "core:Reefsource", "xsd:anyURI"},
    // core:Agent
    {"core:attends", "core:Agent", "core:Event"},
    {"core:created", "core:Agent", "core:Item"},
    {"core:member", "core:Group", "core:Person"},
    {"core:subGroup", "core:Group", "core:Group"},
    {"core:firstName", "core:Person", "xsd:string"},
    {"core:lastName", "core:Person", "xsd:string"},
    {"core:occupation", "core:Person", "xsd:string"},
    {"core:sex", "core:Person", "core:Gender"},
    // core:Item
    {"core:createdBy", "core:Item", "core:Agent"},
    {"core:cites", "core:Item", "core:Item"},
    {"core:containedIn", "core:Item", "core:Collection"},
    {"core:creationTime", "core:Item", "xsd:dateTime"},
    {"core:doi", "core:Item", "xsd:anyURI"},
    {"core:publisher", "core:Item", "core:Group"},
    {"core:dueDate", "core:Call", "xsd:dateTime"},
    {"core:callFor", "core:Call", "core:Reefsource"},
    {"core:contains", "core:Collection", "core:Item"},
    {"core:editor", "core:Collection", "core:Agent"},
    {"core:isbn", "core:Collection", "xsd:anyURI"},
    {"core:issn", "core:Collection", "xsd:anyURI"},
    {"core:oaipmh", "core:Library", "xsd:anyURI"},
    {"core:startPage", "core:Article", "xsd:int"},
    {"core:endPage", "core:Article", "xsd:int"},
    {"core:number", "core:Article", "xsd:int"},
    {"core:volume", "core:Article", "xsd:int"},
    // core:Event
    {"core:startTime", "core:Event", "xsd:dateTime"},
    {"core:endTime", "core:Event", "xsd:dateTime"},
    {"core:presents", "core:Event", "core:Item"},
    {"core:organizedBy", "core:Event", "core:Agent"},
    {"core:subEvent", "core:Event", "core:Event"},
    // relation:related / relation:usage
    {"core:subject", "core:Reefsource", "core:Reefsource"},
    {"core:object", "core:Reefsource", "core:Reefsource"},
    {"core:weight", "relation:related", "xsd:float"},
    {"core:insertTime", "relation:related", "xsd:dateTime"},
    {"core:usageStamps", "relation:usage", "xsd:string"},
};

std::string iri(const char* curie) { return *ns::expand(curie); }

Vocabulary buildBuiltin() {
  Vocabulary v;
  v.addClass(ns::owl("Thing"));
  for (const auto& row : kClasses) {
    v.addClass(iri(row.name), {iri(row.parent)}, row.abbrev);
  }
  for (const auto& row : kProperties) {
    v.addProperty(iri(row.name), {iri(row.domain), iri(row.range)});
  }
  return v;
}

}  // namespace

const Vocabulary& Vocabulary::builtin() {
  static const Vocabulary v = buildBuiltin();
  return v;
}

bool Vocabulary::reaches(
    const std::map<std::string, std::vector<std::string>>& parents,
    const std::string& from, const std::string& to) const {
  return closure(parents, from).contains(to);
}

std::set<std::string> Vocabulary::closure(
    const std::map<std::string, std::vector<std::string>>& parents,
    const std::string& start) {
  std::set<std::string> seen{start};
  std::deque<std::string> queue{start};
  while (!queue.empty()) {
    auto current = std::move(queue.front());
    queue.pop_front();
    auto it = parents.find(current);
    if (it == parents.end()) continue;
    for (const auto& p : it->second) {
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return seen;
}

void Vocabulary::addClass(const std::string& iri,
                          std::vector<std::string> parents,
                          std::string abbrev) {
  classNames_.insert(iri);
  classParents_.try_emplace(iri);
  for (const auto& p : parents) addSubClass(iri, p);
  if (!abbrev.empty()) {
    if (abbrev.size() != 2) {
      throw std::invalid_argument("abbreviation must be 2 characters: " +
                                  abbrev);
    }
    for (const auto& [cls, a] : abbrev_) {
      if (a == abbrev && cls != iri) {
        throw std::invalid_argument("abbreviation " + abbrev +
                                    " already used by " + cls);
      }
    }
    abbrev_[iri] = std::move(abbrev);
  }
}

void Vocabulary::addSubClass(const std::string& child,
                             const std::string& parent) {
  if (!isClass(parent)) addClass(parent);
  if (!isClass(child)) addClass(child);
  if (child == parent || reaches(classParents_, parent, child)) {
    throw std::invalid_argument("subClassOf cycle: " + child + " -> " + parent);
  }
  auto& ps = classParents_[child];
  if (std::find(ps.begin(), ps.end(), parent) == ps.end()) ps.push_back(parent);
}

void Vocabulary::addProperty(const std::string& iri, PropertyInfo info,
                             std::vector<std::string> parents) {
  propertyNames_.insert(iri);
  properties_[iri] = std::move(info);
  propertyParents_.try_emplace(iri);
  for (const auto& p : parents) addSubProperty(iri, p);
}

void Vocabulary::addSubProperty(const std::string& child,
                                const std::string& parent) {
  if (!isProperty(parent)) addProperty(parent, {});
  if (!isProperty(child)) addProperty(child, {});
  if (child == parent || reaches(propertyParents_, parent, child)) {
    throw std::invalid_argument("subPropertyOf cycle: " + child + " -> " +
                                parent);
  }
  auto& ps = propertyParents_[child];
  if (std::find(ps.begin(), ps.end(), parent) == ps.end()) ps.push_back(parent);
}

const std::vector<std::string>& Vocabulary::superClasses(
    const std::string& c) const {
  auto it = classParents_.find(c);
  return it == classParents_.end() ? kNoParents : it->second;
}

const std::vector<std::string>& Vocabulary::superProperties(
    const std::string& p) const {
  auto it = propertyParents_.find(p);
  return it == propertyParents_.end() ? kNoParents : it->second;
}

const PropertyInfo& Vocabulary::property(const std::string& p) const {
  auto it = properties_.find(p);
  if (it == properties_.end()) throw UnknownTerm("unknown property " + p);
  return it->second;
}

std::string Vocabulary::abbrev(const std::string& c) const {
  auto it = abbrev_.find(c);
  return it == abbrev_.end() ? std::string{} : it->second;
}

std::set<std::string> Vocabulary::subclassClosure(const std::string& c) const {
  if (!isClass(c)) throw UnknownTerm("unknown class " + c);
  return closure(classParents_, c);
}

std::set<std::string> Vocabulary::subpropertyClosure(
    const std::string& p) const {
  if (!isProperty(p)) throw UnknownTerm("unknown property " + p);
  return closure(propertyParents_, p);
}

std::vector<Quad> Vocabulary::toQuads() const {
  const Term g = Term::iri(std::string(ns::kSchemaGraph));
  const Term type = Term::iri(ns::rdf("type"));
  std::vector<Quad> out;
  for (const auto& c : classNames_) {
    Term cls = Term::iri(c);
    out.push_back({cls, type, Term::iri(ns::owl("Class")), g});
    for (const auto& p : superClasses(c)) {
      out.push_back({cls, Term::iri(ns::rdfs("subClassOf")), Term::iri(p), g});
    }
    if (auto a = abbrev(c); !a.empty()) {
      out.push_back({cls, Term::iri(ns::core("abbreviation")), Term::literal(a),
                     g});
    }
  }
  for (const auto& p : propertyNames_) {
    Term prop = Term::iri(p);
    out.push_back({prop, type, Term::iri(ns::rdf("Property")), g});
    const auto& info = properties_.at(p);
    if (!info.domain.empty()) {
      out.push_back({prop, Term::iri(ns::rdfs("domain")),
                     Term::iri(info.domain), g});
    }
    if (!info.range.empty()) {
      out.push_back({prop, Term::iri(ns::rdfs("range")), Term::iri(info.range),
                     g});
    }
    for (const auto& parent : superProperties(p)) {
      out.push_back(
          {prop, Term::iri(ns::rdfs("subPropertyOf")), Term::iri(parent), g});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reef
