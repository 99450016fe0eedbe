#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reef {

enum class TermKind : std::uint8_t { Iri, BlankNode, Literal };

// An RDF term: an absolute IRI, a store-scoped blank node, or a literal.
// Terms compare by their canonical N-Quads serialization so every ordering in
// the system is reproducible.
class Term {
 public:
  Term() = default;

  // Throws std::invalid_argument if `iri` has no scheme.
  static Term iri(std::string iri);
  static Term blank(std::string label);
  // An empty `datatype` means xsd:string. A non-empty `language` forces
  // rdf:langString.
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const { return kind_; }
  bool isIri() const { return kind_ == TermKind::Iri; }
  bool isBlank() const { return kind_ == TermKind::BlankNode; }
  bool isLiteral() const { return kind_ == TermKind::Literal; }
  bool isResource() const { return kind_ != TermKind::Literal; }

  // IRI string, blank node label, or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  std::string toNQuads() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  TermKind kind_ = TermKind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

bool isAbsoluteIri(std::string_view iri);

// Escapes for the N-Quads serialization of IRIs and literal lexical forms.
std::string escapeIri(std::string_view iri);
std::string escapeLiteral(std::string_view lexical);

}  // namespace reef

template <>
struct std::hash<reef::Term> {
  std::size_t operator()(const reef::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(t.kind());
  }
};
