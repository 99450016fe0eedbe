#include "reef/term.hpp"

#include <cstdio>

#include "reef/namespaces.hpp"
#include "reef/quad.hpp"

namespace reef {

namespace {

const std::string kXsdString = ns::xsd("string");
const std::string kLangString = ns::rdf("langString");

bool isSchemeChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

void appendUchar(std::string& out, unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04X", c);
  out += buf;
}

}  // namespace

bool isAbsoluteIri(std::string_view iri) {
  if (iri.empty()) return false;
  char first = iri.front();
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z'))) {
    return false;
  }
  for (std::size_t i = 1; i < iri.size(); ++i) {
    if (iri[i] == ':') return true;
    if (!isSchemeChar(iri[i])) return false;
  }
  return false;
}

Term Term::iri(std::string iri) {
  if (!isAbsoluteIri(iri)) {
    throw std::invalid_argument("IRI is not absolute: '" + iri + "'");
  }
  Term t;
  t.kind_ = TermKind::Iri;
  t.value_ = std::move(iri);
  return t;
}

Term Term::blank(std::string label) {
  if (label.empty()) throw std::invalid_argument("empty blank node label");
  Term t;
  t.kind_ = TermKind::BlankNode;
  t.value_ = std::move(label);
  return t;
}

Term Term::literal(std::string lexical, std::string datatype,
                   std::string language) {
  Term t;
  t.kind_ = TermKind::Literal;
  t.value_ = std::move(lexical);
  if (!language.empty()) {
    t.language_ = std::move(language);
    t.datatype_ = kLangString;
  } else {
    t.datatype_ = datatype.empty() ? kXsdString : std::move(datatype);
  }
  return t;
}

std::string escapeIri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size());
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        appendUchar(out, c);
        break;
      default:
        if (c <= 0x20) {
          appendUchar(out, c);
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string escapeLiteral(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char ch : lexical) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string Term::toNQuads() const {
  switch (kind_) {
    case TermKind::Iri:
      return "<" + escapeIri(value_) + ">";
    case TermKind::BlankNode:
      return "_:" + value_;
    case TermKind::Literal: {
      std::string out = "\"" + escapeLiteral(value_) + "\"";
      if (!language_.empty()) {
        out += "@" + language_;
      } else if (datatype_ != kXsdString) {
        out += "^^<" + escapeIri(datatype_) + ">";
      }
      return out;
    }
  }
  return {};
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  return a.toNQuads() <=> b.toNQuads();
}

void Quad::validate() const {
  if (subject.isLiteral()) {
    throw InvalidQuad("literal in subject position: " + subject.toNQuads());
  }
  if (!predicate.isIri()) {
    throw InvalidQuad("predicate must be an IRI: " + predicate.toNQuads());
  }
  if (graph.isLiteral()) {
    throw InvalidQuad("literal in graph position: " + graph.toNQuads());
  }
  for (const Term* t : {&subject, &predicate, &object, &graph}) {
    if (t->isIri() && !isAbsoluteIri(t->value())) {
      throw InvalidQuad("IRI is not absolute: " + t->value());
    }
  }
}

std::string Quad::toNQuads() const {
  return subject.toNQuads() + " " + predicate.toNQuads() + " " +
         object.toNQuads() + " " + graph.toNQuads() + " .";
}

std::strong_ordering operator<=>(const Quad& a, const Quad& b) {
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (auto c = a.object <=> b.object; c != 0) return c;
  return a.graph <=> b.graph;
}

namespace ns {

namespace {
struct Prefix {
  std::string_view name;
  std::string_view iri;
};
constexpr Prefix kPrefixes[] = {
    {"core", kCore}, {"relation", kRelation}, {"rdf", kRdf},
    {"rdfs", kRdfs}, {"owl", kOwl},           {"xsd", kXsd},
    {"dc", kDc},
};
}  // namespace

std::optional<std::string> expand(std::string_view curie) {
  auto colon = curie.find(':');
  if (colon != std::string_view::npos) {
    auto prefix = curie.substr(0, colon);
    for (const auto& p : kPrefixes) {
      if (p.name == prefix) {
        return std::string(p.iri) + std::string(curie.substr(colon + 1));
      }
    }
  }
  if (isAbsoluteIri(curie)) return std::string(curie);
  return std::nullopt;
}

std::string compact(std::string_view iri) {
  for (const auto& p : kPrefixes) {
    if (iri.starts_with(p.iri)) {
      return std::string(p.name) + ":" + std::string(iri.substr(p.iri.size()));
    }
  }
  return std::string(iri);
}

}  // namespace ns

}  // namespace reef
