#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reef/quad_store.hpp"
#include "reef/time.hpp"

namespace reef {

// Distinct items citing `item` through core:cites (self-citations count).
std::size_t citationCount(const QuadStore& store, const Term& item);

// Largest h with at least h values >= h.
std::size_t hIndexOf(std::vector<std::size_t> citations);

// h-index over the items the agent core:created.
std::size_t hIndex(const QuadStore& store, const Term& agent);

// Usage stamps between i and j in either direction, summed over all users.
std::size_t coUsage(const QuadStore& store, const Term& i, const Term& j);

// Citations made in `year` to the collection's items published in the two
// preceding years, divided by the number of those items; 0 when there are
// none. Years come from core:creationTime; undated items are ignored.
// Membership is core:contains from the collection or core:containedIn to it.
double impactFactor(const QuadStore& store, const Term& collection, int year);

enum class Metric { HIndex, CitationCount, CoUsage, ImpactFactor };

// Throws std::invalid_argument for unknown names.
Metric parseMetric(const std::string& name);
std::string metricName(Metric metric);

struct MetricReport {
  std::string resource;
  Metric metric;
  double value = 0.0;
  // Impact factor only: first instant of year Y-2 and last of year Y.
  std::optional<std::pair<Timestamp, Timestamp>> window;

  std::string toJson() const;
};

// `other` is the second resource for co_usage; `year` is required for
// impact_factor. Throws std::invalid_argument when either is missing.
MetricReport computeMetric(const QuadStore& store, Metric metric,
                           const std::string& resource,
                           const std::optional<std::string>& other = {},
                           std::optional<int> year = {});

}  // namespace reef
