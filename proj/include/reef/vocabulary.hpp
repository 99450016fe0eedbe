#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "reef/quad.hpp"

namespace reef {

class UnknownTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PropertyInfo {
  std::string domain;
  std::string range;
};

// Class and property hierarchy plus the two-character display abbreviations.
// Hierarchies may have several parents per node but must stay acyclic;
// addSubClass/addSubProperty reject edges that would close a cycle.
class Vocabulary {
 public:
  // The built-in core + relation vocabulary.
  static const Vocabulary& builtin();

  void addClass(const std::string& iri, std::vector<std::string> parents = {},
                std::string abbrev = {});
  void addProperty(const std::string& iri, PropertyInfo info,
                   std::vector<std::string> parents = {});
  void addSubClass(const std::string& child, const std::string& parent);
  void addSubProperty(const std::string& child, const std::string& parent);

  bool isClass(const std::string& iri) const { return classParents_.contains(iri); }
  bool isProperty(const std::string& iri) const { return properties_.contains(iri); }
  bool isTerm(const std::string& iri) const { return isClass(iri) || isProperty(iri); }

  const std::set<std::string>& classes() const { return classNames_; }
  const std::set<std::string>& properties() const { return propertyNames_; }
  const std::vector<std::string>& superClasses(const std::string& c) const;
  const std::vector<std::string>& superProperties(const std::string& p) const;

  // Throws UnknownTerm for unknown properties.
  const PropertyInfo& property(const std::string& p) const;
  std::string domain(const std::string& p) const { return property(p).domain; }
  std::string range(const std::string& p) const { return property(p).range; }

  // Empty when the class has no abbreviation.
  std::string abbrev(const std::string& c) const;
  const std::map<std::string, std::string>& abbreviations() const {
    return abbrev_;
  }

  // Reflexive-transitive rdfs:subClassOf / rdfs:subPropertyOf closure.
  // Throws UnknownTerm when the argument is not declared.
  std::set<std::string> subclassClosure(const std::string& c) const;
  std::set<std::string> subpropertyClosure(const std::string& p) const;

  // Schema statements (rdf:type, rdfs:subClassOf, rdfs:domain, ...) in the
  // schema graph.
  std::vector<Quad> toQuads() const;

 private:
  bool reaches(const std::map<std::string, std::vector<std::string>>& parents,
               const std::string& from, const std::string& to) const;
  static std::set<std::string> closure(
      const std::map<std::string, std::vector<std::string>>& parents,
      const std::string& start);

  std::set<std::string> classNames_;
  std::set<std::string> propertyNames_;
  std::map<std::string, std::vector<std::string>> classParents_;
  std::map<std::string, std::vector<std::string>> propertyParents_;
  std::map<std::string, PropertyInfo> properties_;
  std::map<std::string, std::string> abbrev_;
};

}  // namespace reef
