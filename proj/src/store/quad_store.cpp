#include "reef/quad_store.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "reef/nquads.hpp"

namespace reef {

namespace {

// Index position i holds SPOG position kPerm[index][i].
constexpr std::array<std::array<int, 4>, 4> kPerm = {{
    {0, 1, 2, 3},  // SPOG
    {1, 2, 0, 3},  // POSG
    {2, 0, 1, 3},  // OSPG
    {3, 0, 1, 2},  // GSPO
}};

IdQuad permute(const IdQuad& spog, int index) {
  IdQuad out;
  for (int i = 0; i < 4; ++i) out[i] = spog[kPerm[index][i]];
  return out;
}

IdQuad unpermute(const IdQuad& q, int index) {
  IdQuad out;
  for (int i = 0; i < 4; ++i) out[kPerm[index][i]] = q[i];
  return out;
}

}  // namespace

QuadStore::QuadStore() = default;
QuadStore::~QuadStore() = default;
QuadStore::QuadStore(QuadStore&&) noexcept = default;
QuadStore& QuadStore::operator=(QuadStore&&) noexcept = default;

std::size_t QuadStore::AdjKeyHash::operator()(const AdjKey& k) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(k.node) << 32) ^ k.predicate;
  h = h * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k.dir);
  return static_cast<std::size_t>(h ^ (h >> 29));
}

TermId QuadStore::intern(const Term& term) {
  std::string key = term.toNQuads();
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  auto id = static_cast<TermId>(terms_.size());
  terms_.push_back(term);
  serialized_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<TermId> QuadStore::lookup(const Term& term) const {
  if (auto it = ids_.find(term.toNQuads()); it != ids_.end()) {
    return it->second;
  }
  return std::nullopt;
}

Quad QuadStore::toQuad(const IdQuad& q) const {
  return Quad{terms_[q[0]], terms_[q[1]], terms_[q[2]], terms_[q[3]]};
}

void QuadStore::adjAdd(TermId node, TermId pred, Direction dir, TermId other) {
  auto& list = adjacency_[AdjKey{node, pred, dir}];
  auto it = std::lower_bound(list.nodes.begin(), list.nodes.end(), other);
  auto idx = static_cast<std::size_t>(it - list.nodes.begin());
  if (it != list.nodes.end() && *it == other) {
    ++list.multiplicity[idx];
    return;
  }
  list.nodes.insert(it, other);
  list.multiplicity.insert(
      list.multiplicity.begin() + static_cast<std::ptrdiff_t>(idx), 1);
  auto& preds = dir == Direction::Out ? outPredicates_ : inPredicates_;
  ++preds[node][pred];
}

void QuadStore::adjRemove(TermId node, TermId pred, Direction dir,
                          TermId other) {
  auto found = adjacency_.find(AdjKey{node, pred, dir});
  if (found == adjacency_.end()) return;
  auto& list = found->second;
  auto it = std::lower_bound(list.nodes.begin(), list.nodes.end(), other);
  if (it == list.nodes.end() || *it != other) return;
  auto idx = static_cast<std::size_t>(it - list.nodes.begin());
  if (--list.multiplicity[idx] > 0) return;
  list.nodes.erase(it);
  list.multiplicity.erase(list.multiplicity.begin() +
                          static_cast<std::ptrdiff_t>(idx));
  auto& preds = dir == Direction::Out ? outPredicates_ : inPredicates_;
  auto& counts = preds[node];
  if (--counts[pred] == 0) counts.erase(pred);
  if (counts.empty()) preds.erase(node);
  if (list.nodes.empty()) adjacency_.erase(found);
}

InsertResult QuadStore::insertIds(const IdQuad& q) {
  if (!spog_.insert(q).second) return InsertResult::AlreadyPresent;
  posg_.insert(permute(q, 1));
  ospg_.insert(permute(q, 2));
  gspo_.insert(permute(q, 3));
  adjAdd(q[0], q[1], Direction::Out, q[2]);
  adjAdd(q[2], q[1], Direction::In, q[0]);
  return InsertResult::Inserted;
}

RemoveResult QuadStore::removeIds(const IdQuad& q) {
  if (spog_.erase(q) == 0) return RemoveResult::Absent;
  posg_.erase(permute(q, 1));
  ospg_.erase(permute(q, 2));
  gspo_.erase(permute(q, 3));
  adjRemove(q[0], q[1], Direction::Out, q[2]);
  adjRemove(q[2], q[1], Direction::In, q[0]);
  return RemoveResult::Removed;
}

InsertResult QuadStore::insert(const Quad& quad) {
  quad.validate();
  IdQuad q{intern(quad.subject), intern(quad.predicate), intern(quad.object),
           intern(quad.graph)};
  auto result = insertIds(q);
  if (result == InsertResult::Inserted) appendLog('+', quad);
  return result;
}

RemoveResult QuadStore::remove(const Quad& quad) {
  IdQuad q;
  const Term* parts[] = {&quad.subject, &quad.predicate, &quad.object,
                         &quad.graph};
  for (int i = 0; i < 4; ++i) {
    auto id = lookup(*parts[i]);
    if (!id) return RemoveResult::Absent;
    q[i] = *id;
  }
  auto result = removeIds(q);
  if (result == RemoveResult::Removed) appendLog('-', quad);
  return result;
}

bool QuadStore::contains(const Quad& quad) const {
  IdQuad q;
  const Term* parts[] = {&quad.subject, &quad.predicate, &quad.object,
                         &quad.graph};
  for (int i = 0; i < 4; ++i) {
    auto id = lookup(*parts[i]);
    if (!id) return false;
    q[i] = *id;
  }
  return spog_.contains(q);
}

std::vector<IdQuad> QuadStore::matchIds(TermId s, TermId p, TermId o,
                                        TermId g) const {
  const IdQuad bound{s, p, o, g};
  const Index* indexes[] = {&spog_, &posg_, &ospg_, &gspo_};

  int best = 0;
  int bestPrefix = -1;
  for (int idx = 0; idx < 4; ++idx) {
    int prefix = 0;
    while (prefix < 4 && bound[kPerm[idx][prefix]] != kNoTerm) ++prefix;
    if (prefix > bestPrefix) {
      best = idx;
      bestPrefix = prefix;
    }
  }

  IdQuad low{0, 0, 0, 0};
  for (int i = 0; i < bestPrefix; ++i) low[i] = bound[kPerm[best][i]];

  std::vector<IdQuad> out;
  const Index& index = *indexes[best];
  for (auto it = index.lower_bound(low); it != index.end(); ++it) {
    const IdQuad& q = *it;
    bool inRange = true;
    for (int i = 0; i < bestPrefix; ++i) {
      if (q[i] != low[i]) {
        inRange = false;
        break;
      }
    }
    if (!inRange) break;
    IdQuad spog = unpermute(q, best);
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      if (bound[i] != kNoTerm && spog[i] != bound[i]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(spog);
  }
  return out;
}

std::vector<Quad> QuadStore::match(const QuadPattern& pattern) const {
  IdQuad bound;
  const std::optional<Term>* parts[] = {&pattern.subject, &pattern.predicate,
                                        &pattern.object, &pattern.graph};
  for (int i = 0; i < 4; ++i) {
    if (!parts[i]->has_value()) {
      bound[i] = kNoTerm;
      continue;
    }
    auto id = lookup(**parts[i]);
    if (!id) return {};
    bound[i] = *id;
  }
  auto ids = matchIds(bound[0], bound[1], bound[2], bound[3]);
  std::sort(ids.begin(), ids.end(), [this](const IdQuad& a, const IdQuad& b) {
    for (int i = 0; i < 4; ++i) {
      if (a[i] == b[i]) continue;
      return serialized_[a[i]] < serialized_[b[i]];
    }
    return false;
  });
  std::vector<Quad> out;
  out.reserve(ids.size());
  for (const auto& q : ids) out.push_back(toQuad(q));
  return out;
}

std::vector<Quad> QuadStore::all() const { return match(QuadPattern{}); }

std::span<const TermId> QuadStore::neighborIds(TermId node, TermId predicate,
                                               Direction dir) const {
  auto it = adjacency_.find(AdjKey{node, predicate, dir});
  if (it == adjacency_.end()) return {};
  return it->second.nodes;
}

std::vector<Term> QuadStore::neighbors(const Term& node, const Term& predicate,
                                       Direction dir) const {
  auto n = lookup(node);
  auto p = lookup(predicate);
  if (!n || !p) return {};
  auto ids = neighborIds(*n, *p, dir);
  std::vector<TermId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end(), [this](TermId a, TermId b) {
    return serialized_[a] < serialized_[b];
  });
  std::vector<Term> out;
  out.reserve(sorted.size());
  for (TermId id : sorted) out.push_back(terms_[id]);
  return out;
}

std::vector<TermId> QuadStore::predicatesAt(TermId node, Direction dir) const {
  const auto& preds = dir == Direction::Out ? outPredicates_ : inPredicates_;
  std::vector<TermId> out;
  if (auto it = preds.find(node); it != preds.end()) {
    out.reserve(it->second.size());
    for (const auto& [pred, count] : it->second) out.push_back(pred);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool QuadStore::hasBlankLabel(std::string_view label) const {
  return ids_.contains("_:" + std::string(label));
}

Term QuadStore::freshBlankNode(std::string_view hint) {
  std::string label;
  do {
    label = std::string(hint) + std::to_string(++blankCounter_);
  } while (hasBlankLabel(label));
  // Interning reserves the label even before the node is used in a quad.
  Term t = Term::blank(label);
  intern(t);
  return t;
}

void QuadStore::appendLog(char op, const Quad& quad) {
  if (!log_) return;
  *log_ << op << ' ' << quad.toNQuads() << '\n';
  log_->flush();
}

void QuadStore::attachLog(const std::filesystem::path& path) {
  log_.reset();
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read log " + path.string());
    std::string line;
    std::size_t lineNumber = 0;
    while (std::getline(in, line)) {
      ++lineNumber;
      if (line.empty()) continue;
      if (line.size() < 3 || (line[0] != '+' && line[0] != '-') ||
          line[1] != ' ') {
        throw std::runtime_error("corrupt log entry at " + path.string() +
                                 ":" + std::to_string(lineNumber));
      }
      Quad q;
      if (!parseNQuadsLine(std::string_view(line).substr(2), lineNumber, q)) {
        continue;
      }
      if (line[0] == '+') {
        insert(q);
      } else {
        remove(q);
      }
    }
  }
  log_ = std::make_unique<std::ofstream>(path, std::ios::app);
  if (!*log_) {
    log_.reset();
    throw std::runtime_error("cannot open log " + path.string());
  }
}

}  // namespace reef
