#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

#include "reef/term.hpp"

namespace reef {

// Raised when a quad violates the positional constraints
// (U∪B) × U × (U∪B∪L) × (U∪B).
class InvalidQuad : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Quad {
  Term subject;
  Term predicate;
  Term object;
  Term graph;

  // Throws InvalidQuad with a diagnostic naming the offending position.
  void validate() const;

  // One N-Quads statement, without the trailing newline.
  std::string toNQuads() const;

  friend bool operator==(const Quad&, const Quad&) = default;
  friend std::strong_ordering operator<=>(const Quad& a, const Quad& b);
};

// Any subset of positions may be bound; unbound positions match everything.
struct QuadPattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;
  std::optional<Term> graph;
};

enum class Direction { Out, In };

}  // namespace reef
