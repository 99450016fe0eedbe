#include "reef/ranked_list.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace reef {

RankedList::RankedList(const std::map<std::string, double>& scores) {
  entries_.reserve(scores.size());
  for (const auto& [resource, score] : scores) {
    if (!std::isfinite(score)) {
      throw std::invalid_argument("non-finite score for " + resource);
    }
    entries_.push_back({resource, score});
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const RankedEntry& a, const RankedEntry& b) {
                     return a.score > b.score;
                   });
}

bool RankedList::contains(const std::string& resource) const {
  return rank(resource).has_value();
}

std::optional<double> RankedList::score(const std::string& resource) const {
  auto r = rank(resource);
  if (!r) return std::nullopt;
  return entries_[*r].score;
}

std::optional<std::size_t> RankedList::rank(const std::string& resource) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].resource == resource) return i;
  }
  return std::nullopt;
}

std::vector<std::string> RankedList::resources() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.resource);
  return out;
}

RankedList RankedList::positiveOnly() const {
  RankedList out;
  for (const auto& e : entries_) {
    if (e.score > 0.0) out.entries_.push_back(e);
  }
  return out;
}

RankedList RankedList::truncated(std::size_t limit) const {
  RankedList out;
  out.entries_.assign(entries_.begin(),
                      entries_.begin() + std::min(limit, entries_.size()));
  return out;
}

std::string RankedList::toText() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    os << (i + 1) << '\t' << entries_[i].score << '\t' << entries_[i].resource
       << '\n';
  }
  return os.str();
}

}  // namespace reef
