#include "reef/analytics.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include <json.hpp>

#include "reef/namespaces.hpp"
#include "reef/relations.hpp"

namespace reef {

namespace {

Term core(const char* local) { return Term::iri(ns::core(local)); }

std::optional<int> creationYear(const QuadStore& store, const Term& item) {
  for (const auto& o : store.neighbors(item, core("creationTime"),
                                       Direction::Out)) {
    if (!o.isLiteral()) continue;
    try {
      return yearOf(parseTimestamp(o.value()));
    } catch (const std::invalid_argument&) {
    }
  }
  return std::nullopt;
}

Timestamp startOfYear(int year) {
  using namespace std::chrono;
  return time_point_cast<milliseconds>(
      sys_days(std::chrono::year(year) / January / 1));
}

}  // namespace

std::size_t citationCount(const QuadStore& store, const Term& item) {
  return store.neighbors(item, core("cites"), Direction::In).size();
}

std::size_t hIndexOf(std::vector<std::size_t> citations) {
  std::sort(citations.begin(), citations.end(), std::greater<>());
  std::size_t h = 0;
  while (h < citations.size() && citations[h] >= h + 1) ++h;
  return h;
}

std::size_t hIndex(const QuadStore& store, const Term& agent) {
  std::vector<std::size_t> counts;
  for (const auto& item : store.neighbors(agent, core("created"),
                                          Direction::Out)) {
    counts.push_back(citationCount(store, item));
  }
  return hIndexOf(std::move(counts));
}

std::size_t coUsage(const QuadStore& store, const Term& i, const Term& j) {
  std::size_t total = 0;
  for (const auto& r : usageRecords(store)) {
    if ((r.subject == i && r.object == j) ||
        (r.subject == j && r.object == i)) {
      total += r.stamps.size();
    }
  }
  return total;
}

double impactFactor(const QuadStore& store, const Term& collection, int year) {
  std::set<Term> items;
  for (auto& t : store.neighbors(collection, core("contains"), Direction::Out)) {
    items.insert(std::move(t));
  }
  for (auto& t : store.neighbors(collection, core("containedIn"),
                                 Direction::In)) {
    items.insert(std::move(t));
  }
  std::size_t published = 0;
  std::size_t citations = 0;
  for (const auto& item : items) {
    auto y = creationYear(store, item);
    if (!y || (*y != year - 1 && *y != year - 2)) continue;
    ++published;
    for (const auto& citer : store.neighbors(item, core("cites"),
                                             Direction::In)) {
      if (creationYear(store, citer) == year) ++citations;
    }
  }
  if (published == 0) return 0.0;
  return static_cast<double>(citations) / static_cast<double>(published);
}

Metric parseMetric(const std::string& name) {
  if (name == "h_index") return Metric::HIndex;
  if (name == "citation_count") return Metric::CitationCount;
  if (name == "co_usage") return Metric::CoUsage;
  if (name == "impact_factor") return Metric::ImpactFactor;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

std::string metricName(Metric metric) {
  switch (metric) {
    case Metric::HIndex: return "h_index";
    case Metric::CitationCount: return "citation_count";
    case Metric::CoUsage: return "co_usage";
    case Metric::ImpactFactor: return "impact_factor";
  }
  return "?";
}

std::string MetricReport::toJson() const {
  nlohmann::json j;
  j["v"] = 1;
  j["resource"] = resource;
  j["metric"] = metricName(metric);
  j["value"] = value;
  if (window) {
    j["window"] = {{"start", formatTimestamp(window->first)},
                   {"end", formatTimestamp(window->second)}};
  }
  return j.dump();
}

MetricReport computeMetric(const QuadStore& store, Metric metric,
                           const std::string& resource,
                           const std::optional<std::string>& other,
                           std::optional<int> year) {
  const Term r = Term::iri(resource);
  MetricReport report{resource, metric, 0.0, std::nullopt};
  switch (metric) {
    case Metric::HIndex:
      report.value = static_cast<double>(hIndex(store, r));
      break;
    case Metric::CitationCount:
      report.value = static_cast<double>(citationCount(store, r));
      break;
    case Metric::CoUsage:
      if (!other) throw std::invalid_argument("co_usage needs a second resource");
      report.value = static_cast<double>(coUsage(store, r, Term::iri(*other)));
      break;
    case Metric::ImpactFactor:
      if (!year) throw std::invalid_argument("impact_factor needs a year");
      report.value = impactFactor(store, r, *year);
      report.window = std::make_pair(
          startOfYear(*year - 2),
          startOfYear(*year + 1) - std::chrono::milliseconds(1));
      break;
  }
  return report;
}

}  // namespace reef
