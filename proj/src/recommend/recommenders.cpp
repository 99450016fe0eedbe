#include "reef/recommenders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "reef/namespaces.hpp"
#include "reef/reasoning.hpp"
#include "reef/relations.hpp"

namespace reef {

namespace {

std::string formatNumber(double v) { return formatDouble(v); }

double numberParam(const GrammarParams& params, const std::string& key,
                   double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw RecommendError("parameter '" + key + "' is not a number");
}

std::string stringParam(const GrammarParams& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) {
    throw RecommendError("missing parameter '" + key + "'");
  }
  return it->second;
}

std::string iriParam(const GrammarParams& params, const std::string& key) {
  auto value = stringParam(params, key);
  auto iri = ns::expand(value);
  if (!iri) throw RecommendError("parameter '" + key + "' is not an IRI");
  return *iri;
}

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RankedList withoutSeeds(const RankedList& list,
                        const std::vector<std::string>& seeds) {
  std::set<std::string> banned(seeds.begin(), seeds.end());
  std::map<std::string, double> kept;
  for (const auto& e : list) {
    if (!banned.contains(e.resource)) kept[e.resource] = e.score;
  }
  return RankedList(kept);
}

}  // namespace

Recommenders::Recommenders(const QuadStore& store, const Vocabulary& vocab,
                           GrammarRegistry registry)
    : store_(store), vocab_(vocab), registry_(std::move(registry)) {}

RankedList Recommenders::discover(const DiscoverRequest& req) const {
  if (req.seeds.empty()) throw RecommendError("discover needs seeds");
  std::vector<std::string> types;
  for (const auto& t : req.returnTypes) {
    auto iri = ns::expand(t);
    if (!iri || !vocab_.isClass(*iri)) {
      throw RecommendError("unknown return type '" + t + "'");
    }
    types.push_back(*iri);
  }

  Walker walker(store_, vocab_);
  const std::pair<const char*, double> parts[] = {
      {"discover-generic", 1.0},
      {"discover-coauthorship", kCompositeBoost},
      {"discover-cocitation", kCompositeBoost},
      {"discover-coevent", kCompositeBoost},
      {"discover-cousage", kCompositeBoost},
  };
  std::map<std::string, double> total;
  for (const auto& [name, weight] : parts) {
    Grammar g = registry_.load(name).bind(
        {{"delta", formatNumber(req.cfg.decay)}});
    for (const auto& e : walker.execute(g, req.seeds, req.cfg)) {
      total[e.resource] += weight * e.score;
    }
  }

  std::set<std::string> seeds(req.seeds.begin(), req.seeds.end());
  std::map<std::string, double> kept;
  for (const auto& [iri, score] : total) {
    if (score <= 0.0 || seeds.contains(iri) || vocab_.isTerm(iri)) continue;
    if (!types.empty()) {
      const Term r = Term::iri(iri);
      bool ok = std::any_of(types.begin(), types.end(), [&](const auto& c) {
        return isInstance(store_, vocab_, r, c);
      });
      if (!ok) continue;
    }
    kept[iri] = score;
  }
  return RankedList(kept);
}

RankedList Recommenders::referees(const RefereeRequest& req,
                                  WalkerConfig cfg) const {
  if (req.maxDepthCoauthor < 0) {
    throw RecommendError("maxDepthCoauthor must be non-negative");
  }
  if (!(req.delta >= 0.0 && req.delta <= 1.0)) {
    throw RecommendError("delta must lie in [0,1]");
  }
  const auto depth = static_cast<std::uint32_t>(req.maxDepthCoauthor);
  const GrammarParams params{{"delta", formatNumber(req.delta)},
                             {"depth", std::to_string(depth)}};
  Walker walker(store_, vocab_);

  WalkerConfig positiveCfg = cfg;
  positiveCfg.maxSteps = std::max(cfg.maxSteps, 2 + 2 * depth);
  Grammar positive = registry_.load("referee").bind(params);
  RankedList pos = walker.execute(positive, {req.article}, positiveCfg);

  double maxPositive = 0.0;
  for (const auto& e : pos) maxPositive = std::max(maxPositive, e.score);
  if (maxPositive <= 0.0) return {};

  // The conflict phase broadcasts to every author and coauthor, starting
  // high enough that authors receive at least maxPositive and depth-1
  // coauthors at least maxPositive as well.
  WalkerConfig coiCfg = cfg;
  coiCfg.initialEnergy =
      req.delta > 0.0 ? maxPositive / req.delta : maxPositive;
  coiCfg.maxSteps = std::max(cfg.maxSteps, 1 + 2 * depth);
  double threshold =
      cfg.energyThreshold * coiCfg.initialEnergy / cfg.initialEnergy;
  const double deepest =
      coiCfg.initialEnergy * std::pow(req.delta, static_cast<double>(depth));
  if (deepest > 0.0) threshold = std::min(threshold, deepest / 2.0);
  coiCfg.energyThreshold = threshold;
  Grammar coi = registry_.load("referee-coi").bind(params);
  RankedList neg = walker.execute(coi, {req.article}, coiCfg);

  std::map<std::string, double> combined;
  for (const auto& e : pos) combined[e.resource] += e.score;
  for (const auto& e : neg) {
    if (combined.contains(e.resource)) combined[e.resource] += e.score;
  }
  std::map<std::string, double> kept;
  for (const auto& [iri, score] : combined) {
    if (score > 0.0 && iri != req.article) kept[iri] = score;
  }
  return RankedList(kept);
}

RankedList Recommenders::news(const NewsRequest& req, WalkerConfig cfg) const {
  if (!(req.halfLifeSeconds > 0.0)) {
    throw RecommendError("half-life must be positive");
  }
  if (!isAbsoluteIri(req.user) || !isAbsoluteIri(req.conceptIri)) {
    throw RecommendError("user and concept must be absolute IRIs");
  }
  const Term user = Term::iri(req.user);
  const Term conceptTerm = Term::iri(req.conceptIri);
  std::vector<std::string> seeds;
  for (const auto& a : associations(store_, user)) {
    if (a.subject == conceptTerm && a.object.isIri()) {
      seeds.push_back(a.object.value());
    }
  }
  if (seeds.empty()) return {};

  Grammar g = registry_.load("news").bind(
      {{"concept", req.conceptIri},
       {"halfLife", formatNumber(req.halfLifeSeconds)}});
  cfg.now = req.now;
  RankedList reached = Walker(store_, vocab_).execute(g, seeds, cfg);

  std::set<std::string> banned(seeds.begin(), seeds.end());
  banned.insert(req.user);
  std::map<std::string, double> kept;
  for (const auto& e : reached) {
    if (!banned.contains(e.resource)) kept[e.resource] = e.score;
  }
  return RankedList(kept);
}

RankedList Recommenders::recommend(const std::string& name,
                                   const std::vector<std::string>& seeds,
                                   const GrammarParams& params,
                                   const WalkerConfig& cfg) const {
  if (name == "referee") {
    RefereeRequest req;
    auto it = params.find("article");
    if (it != params.end()) {
      req.article = iriParam(params, "article");
    } else if (seeds.size() == 1) {
      req.article = seeds.front();
    } else {
      throw RecommendError("referee needs exactly one article");
    }
    double depth = numberParam(params, "depth", req.maxDepthCoauthor);
    if (depth < 0 || depth != std::floor(depth)) {
      throw RecommendError("depth must be a non-negative integer");
    }
    req.maxDepthCoauthor = static_cast<int>(depth);
    req.delta = numberParam(params, "delta", req.delta);
    return referees(req, cfg);
  }
  if (name == "news") {
    NewsRequest req;
    req.user = iriParam(params, "user");
    req.conceptIri = iriParam(params, "concept");
    auto it = params.find("now");
    try {
      req.now = it == params.end() ? reef::now() : parseTimestamp(it->second);
    } catch (const std::invalid_argument& e) {
      throw RecommendError(std::string("bad 'now': ") + e.what());
    }
    req.halfLifeSeconds = numberParam(params, "halfLife", req.halfLifeSeconds);
    return news(req, cfg);
  }
  if (name == "discover") {
    DiscoverRequest req{seeds, {}, cfg};
    auto it = params.find("returnTypes");
    if (it != params.end()) req.returnTypes = splitList(it->second);
    return discover(req);
  }

  Grammar g = registry_.load(name);
  GrammarParams bound = params;
  bound.try_emplace("delta", formatNumber(cfg.decay));
  try {
    g = g.bind(bound);
  } catch (const GrammarError& e) {
    throw RecommendError(e.what());
  }
  if (!g.fullyBound()) {
    throw RecommendError("grammar '" + name + "' needs more parameters");
  }
  if (seeds.empty()) throw RecommendError("no seeds given");
  RankedList out = Walker(store_, vocab_).execute(g, seeds, cfg);
  return withoutSeeds(out, seeds).positiveOnly();
}

}  // namespace reef
