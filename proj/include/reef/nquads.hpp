#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reef/quad.hpp"

namespace reef {

class QuadStore;

class NQuadsError : public std::runtime_error {
 public:
  NQuadsError(std::size_t line, const std::string& reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses an N-Quads 1.1 document. Statements without a graph label land in
// ns::kDefaultGraph. Blank node labels are returned verbatim.
std::vector<Quad> parseNQuads(std::string_view text);

// Parses a single statement line. Returns false for blank/comment-only lines.
bool parseNQuadsLine(std::string_view line, std::size_t lineNumber,
                     Quad& out);

// Loads a document into `store`. The whole document is parsed before anything
// is inserted. Blank node labels that already exist in the store are renamed
// to fresh labels. Returns the number of statements read.
std::size_t loadNQuads(QuadStore& store, std::string_view text);

// Every quad, one statement per line, SPOG canonical order.
std::string exportNQuads(const QuadStore& store);
std::string serializeNQuads(const std::vector<Quad>& quads);

}  // namespace reef
