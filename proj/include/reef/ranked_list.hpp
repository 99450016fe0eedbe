#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reef {

struct RankedEntry {
  std::string resource;
  double score = 0.0;
  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

// Scores sorted descending, ties broken by lexicographic IRI.
class RankedList {
 public:
  RankedList() = default;
  explicit RankedList(const std::map<std::string, double>& scores);

  const std::vector<RankedEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool contains(const std::string& resource) const;
  std::optional<double> score(const std::string& resource) const;
  // 0-based position, or nullopt when absent.
  std::optional<std::size_t> rank(const std::string& resource) const;
  std::vector<std::string> resources() const;

  RankedList positiveOnly() const;
  RankedList truncated(std::size_t limit) const;

  // Plain text table, scores with 17 significant digits.
  std::string toText() const;

  friend bool operator==(const RankedList&, const RankedList&) = default;

 private:
  std::vector<RankedEntry> entries_;
};

}  // namespace reef
