#include "reef/nquads.hpp"

#include <map>
#include <set>

#include "reef/namespaces.hpp"
#include "reef/quad_store.hpp"

namespace reef {

NQuadsError::NQuadsError(std::size_t line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason),
      line_(line) {}

namespace {

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool isAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool isDigit(char c) { return c >= '0' && c <= '9'; }

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line)
      : text_(text), line_(line) {}

  bool parse(Quad& out) {
    skipSpace();
    if (atEnd()) return false;
    out.subject = resource("subject");
    skipSpace();
    if (peek() != '<') fail("predicate must be an IRI");
    out.predicate = iri();
    skipSpace();
    out.object = object();
    skipSpace();
    if (peek() == '<' || peek() == '_') {
      out.graph = resource("graph label");
      skipSpace();
    } else {
      out.graph = Term::iri(std::string(ns::kDefaultGraph));
    }
    if (peek() != '.') fail("expected '.' terminating the statement");
    ++pos_;
    skipSpace();
    if (!atEnd()) fail("unexpected content after '.'");
    return true;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw NQuadsError(line_, reason + " (column " + std::to_string(pos_ + 1) +
                                 ")");
  }

  bool atEnd() const { return pos_ >= text_.size(); }
  char peek() const { return atEnd() ? '\0' : text_[pos_]; }

  void skipSpace() {
    while (!atEnd()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        pos_ = text_.size();
      } else {
        break;
      }
    }
  }

  std::uint32_t hex(std::size_t digits) {
    if (pos_ + digits > text_.size()) fail("truncated escape");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = text_[pos_++];
      v <<= 4;
      if (isDigit(c)) {
        v |= static_cast<std::uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        v |= static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        v |= static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        fail("bad hex digit in escape");
      }
    }
    return v;
  }

  void uchar(std::string& out) {
    char kind = text_[pos_++];
    appendUtf8(out, hex(kind == 'u' ? 4 : 8));
  }

  Term iri() {
    ++pos_;  // '<'
    std::string value;
    while (true) {
      if (atEnd()) fail("unterminated IRI");
      char c = text_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (peek() != 'u' && peek() != 'U') fail("bad escape in IRI");
        uchar(value);
        continue;
      }
      auto uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail("illegal character in IRI");
      }
      value += c;
      ++pos_;
    }
    if (!isAbsoluteIri(value)) fail("relative IRI <" + value + ">");
    return Term::iri(std::move(value));
  }

  Term blank() {
    if (text_.substr(pos_, 2) != "_:") fail("expected blank node");
    pos_ += 2;
    std::size_t start = pos_;
    while (!atEnd()) {
      char c = text_[pos_];
      auto uc = static_cast<unsigned char>(c);
      bool ok = isAlpha(c) || isDigit(c) || c == '_' || c == '-' || c == '.' ||
                uc >= 0x80;
      if (!ok) break;
      ++pos_;
    }
    // A trailing '.' terminates the statement rather than the label.
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    char first = text_[start];
    if (first == '-' || first == '.') fail("bad blank node label");
    return Term::blank(std::string(text_.substr(start, pos_ - start)));
  }

  Term resource(const char* position) {
    if (peek() == '<') return iri();
    if (peek() == '_') return blank();
    if (peek() == '"') fail(std::string("literal in ") + position + " position");
    fail(std::string("expected IRI or blank node as ") + position);
  }

  Term object() {
    if (peek() == '<') return iri();
    if (peek() == '_') return blank();
    if (peek() != '"') fail("expected object term");
    ++pos_;
    std::string lexical;
    while (true) {
      if (atEnd()) fail("unterminated literal");
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\n' || c == '\r') fail("raw newline in literal");
      if (c == '\\') {
        ++pos_;
        char e = peek();
        switch (e) {
          case 't': lexical += '\t'; ++pos_; break;
          case 'b': lexical += '\b'; ++pos_; break;
          case 'n': lexical += '\n'; ++pos_; break;
          case 'r': lexical += '\r'; ++pos_; break;
          case 'f': lexical += '\f'; ++pos_; break;
          case '"': lexical += '"'; ++pos_; break;
          case '\'': lexical += '\''; ++pos_; break;
          case '\\': lexical += '\\'; ++pos_; break;
          case 'u':
          case 'U': uchar(lexical); break;
          default: fail("bad escape in literal");
        }
        continue;
      }
      lexical += c;
      ++pos_;
    }
    if (peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (isAlpha(peek())) ++pos_;
      if (pos_ == start) fail("empty language tag");
      while (peek() == '-') {
        ++pos_;
        std::size_t sub = pos_;
        while (isAlpha(peek()) || isDigit(peek())) ++pos_;
        if (pos_ == sub) fail("bad language tag");
      }
      return Term::literal(std::move(lexical), {},
                           std::string(text_.substr(start, pos_ - start)));
    }
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (peek() != '<') fail("datatype must be an IRI");
      Term dt = iri();
      return Term::literal(std::move(lexical), dt.value());
    }
    return Term::literal(std::move(lexical));
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

bool parseNQuadsLine(std::string_view line, std::size_t lineNumber,
                     Quad& out) {
  return LineParser(line, lineNumber).parse(out);
}

std::vector<Quad> parseNQuads(std::string_view text) {
  std::vector<Quad> quads;
  std::size_t lineNumber = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineNumber;
    Quad q;
    if (parseNQuadsLine(text.substr(start, end - start), lineNumber, q)) {
      quads.push_back(std::move(q));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return quads;
}

std::size_t loadNQuads(QuadStore& store, std::string_view text) {
  auto quads = parseNQuads(text);
  std::set<std::string> documentLabels;
  for (const auto& q : quads) {
    for (const Term* t : {&q.subject, &q.object, &q.graph}) {
      if (t->isBlank()) documentLabels.insert(t->value());
    }
  }
  std::map<std::string, Term> renamed;
  auto remap = [&](Term& t) {
    if (!t.isBlank()) return;
    auto it = renamed.find(t.value());
    if (it == renamed.end()) {
      Term target = t;
      if (store.hasBlankLabel(t.value())) {
        do {
          target = store.freshBlankNode(t.value() + "_");
        } while (documentLabels.contains(target.value()));
      }
      it = renamed.emplace(t.value(), target).first;
    }
    t = it->second;
  };
  // Resolve every label against the store as it was before this document.
  for (auto& q : quads) {
    remap(q.subject);
    remap(q.object);
    remap(q.graph);
  }
  for (const auto& q : quads) store.insert(q);
  return quads.size();
}

std::string serializeNQuads(const std::vector<Quad>& quads) {
  std::string out;
  for (const auto& q : quads) {
    out += q.toNQuads();
    out += '\n';
  }
  return out;
}

std::string exportNQuads(const QuadStore& store) {
  return serializeNQuads(store.all());
}

}  // namespace reef
