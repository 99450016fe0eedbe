#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "reef/quad.hpp"
#include "reef/term.hpp"

namespace reef {

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = ~TermId{0};

enum class InsertResult { Inserted, AlreadyPresent };
enum class RemoveResult { Removed, Absent };

// Interned quad, positions in SPOG order.
using IdQuad = std::array<TermId, 4>;

// In-memory quad store with four permutation indexes (SPOG, POSG, OSPG, GSPO)
// and a (node, predicate, direction) adjacency map for traversal.
//
// Terms are interned to dense ids that are never recycled, so ids handed out
// by lookup() stay valid for the lifetime of the store. The store itself is
// not synchronized; see SharedStore for the single-writer/multi-reader
// wrapper.
class QuadStore {
 public:
  QuadStore();
  ~QuadStore();
  QuadStore(QuadStore&&) noexcept;
  QuadStore& operator=(QuadStore&&) noexcept;

  InsertResult insert(const Quad& quad);
  RemoveResult remove(const Quad& quad);
  bool contains(const Quad& quad) const;

  // Quads agreeing with every bound position, sorted SPOG by canonical term
  // serialization.
  std::vector<Quad> match(const QuadPattern& pattern) const;
  std::vector<Quad> match(const std::optional<Term>& s,
                          const std::optional<Term>& p,
                          const std::optional<Term>& o,
                          const std::optional<Term>& g) const {
    return match(QuadPattern{s, p, o, g});
  }

  // Distinct o with <node,predicate,o,*> (Out) or distinct s with
  // <s,predicate,node,*> (In), sorted by canonical serialization.
  std::vector<Term> neighbors(const Term& node, const Term& predicate,
                              Direction dir) const;

  std::size_t size() const { return spog_.size(); }
  bool empty() const { return spog_.empty(); }

  // Mints a blank node whose label is not used anywhere in the store.
  Term freshBlankNode(std::string_view hint = "b");
  bool hasBlankLabel(std::string_view label) const;

  // Every quad in SPOG canonical order.
  std::vector<Quad> all() const;

  // Replays the append-only log at `path` (creating it if missing) and then
  // records every subsequent insert/remove there.
  void attachLog(const std::filesystem::path& path);

  // --- id-level access used by the walker and analytics ---------------------
  std::optional<TermId> lookup(const Term& term) const;
  const Term& term(TermId id) const { return terms_[id]; }
  const std::string& serialized(TermId id) const { return serialized_[id]; }
  std::size_t termCount() const { return terms_.size(); }

  // Same contract as neighbors(), sorted by id instead of serialization.
  std::span<const TermId> neighborIds(TermId node, TermId predicate,
                                      Direction dir) const;

  // Id quads matching the pattern (kNoTerm = unbound), in index order.
  std::vector<IdQuad> matchIds(TermId s, TermId p, TermId o, TermId g) const;

  // Predicates with at least one edge at `node` in the given direction.
  std::vector<TermId> predicatesAt(TermId node, Direction dir) const;

 private:
  struct AdjKey {
    TermId node;
    TermId predicate;
    Direction dir;
    friend bool operator==(const AdjKey&, const AdjKey&) = default;
  };
  struct AdjKeyHash {
    std::size_t operator()(const AdjKey& k) const noexcept;
  };
  struct AdjList {
    std::vector<TermId> nodes;  // sorted ascending
    std::vector<std::uint32_t> multiplicity;
  };
  using Index = std::set<IdQuad>;

  TermId intern(const Term& term);
  InsertResult insertIds(const IdQuad& q);
  RemoveResult removeIds(const IdQuad& q);
  void adjAdd(TermId node, TermId pred, Direction dir, TermId other);
  void adjRemove(TermId node, TermId pred, Direction dir, TermId other);
  void appendLog(char op, const Quad& quad);
  Quad toQuad(const IdQuad& q) const;

  std::vector<Term> terms_;
  std::vector<std::string> serialized_;
  std::unordered_map<std::string, TermId> ids_;
  std::uint64_t blankCounter_ = 0;

  Index spog_, posg_, ospg_, gspo_;
  std::unordered_map<AdjKey, AdjList, AdjKeyHash> adjacency_;
  std::unordered_map<TermId, std::unordered_map<TermId, std::uint32_t>>
      outPredicates_, inPredicates_;

  std::unique_ptr<std::ofstream> log_;
};

}  // namespace reef
