#include "reef/walker.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>
#include <unordered_map>

#include "reef/namespaces.hpp"

namespace reef {

void WalkerConfig::validate() const {
  if (!(initialEnergy > 0.0) || !std::isfinite(initialEnergy)) {
    throw WalkError("initial energy must be positive");
  }
  if (!(energyThreshold > 0.0)) {
    throw WalkError("energy threshold must be positive");
  }
  if (!(energyThreshold < initialEnergy)) {
    throw WalkError("energy threshold must be below the initial energy");
  }
  if (!(decay >= 0.0 && decay <= 1.0)) {
    throw WalkError("decay must lie in [0,1]");
  }
  if (maxSteps == 0) throw WalkError("maxSteps must be positive");
  if (mode == WalkMode::MonteCarlo && walkersPerSeed == 0) {
    throw WalkError("walkersPerSeed must be positive");
  }
}

namespace {

struct Edge {
  TermId target;
  double factor;
};

enum class AssocKind { None, Related, Usage };

struct AssocEdge {
  TermId owner;
  TermId subject;
  TermId object;
  std::optional<Timestamp> insertTime;
};

bool isSchemaPredicate(const std::string& iri) {
  auto starts = [&](std::string_view prefix) {
    return iri.compare(0, prefix.size(), prefix) == 0;
  };
  return starts(ns::kRdf) || starts(ns::kRdfs) || starts(ns::kOwl);
}

// Everything that stays fixed for one run().
class Execution {
 public:
  Execution(const QuadStore& store, const Vocabulary& vocab,
            const Grammar& grammar, const std::vector<std::string>& seeds,
            const WalkerConfig& cfg)
      : store_(store), vocab_(vocab), grammar_(grammar), cfg_(cfg) {
    cfg.validate();
    if (!grammar.fullyBound()) {
      throw WalkError("grammar '" + grammar.name + "' has unbound parameters");
    }
    grammar.validate();
    if (grammar.steps.size() > cfg.maxSteps) {
      throw WalkError("maxSteps is shorter than the grammar");
    }
    if (seeds.empty()) throw WalkError("no seeds given");
    std::set<std::string> sorted(seeds.begin(), seeds.end());
    for (const auto& s : sorted) {
      std::optional<TermId> id;
      if (isAbsoluteIri(s)) id = store.lookup(Term::iri(s));
      if (!id || (store.matchIds(*id, kNoTerm, kNoTerm, kNoTerm).empty() &&
                  store.matchIds(kNoTerm, kNoTerm, *id, kNoTerm).empty() &&
                  store.matchIds(kNoTerm, kNoTerm, kNoTerm, *id).empty())) {
        throw UnknownSeed("seed not in store: " + s);
      }
      seeds_.push_back(*id);
    }
    seedSet_.insert(seeds_.begin(), seeds_.end());

    rdfType_ = idOf(ns::rdf("type"));
    defaultFactor_ = grammar.loop ? 1.0 : cfg.decay;
    now_ = cfg.now.value_or(reef::now());

    for (const auto& step : grammar.steps) resolveStep(step);
  }

  const std::vector<TermId>& seeds() const { return seeds_; }
  const Grammar& grammar() const { return grammar_; }
  const WalkerConfig& cfg() const { return cfg_; }

  bool needsPrevious(std::size_t hop) const {
    auto s = grammar_.stepAt(hop);
    return s && grammar_.steps[*s].has(StepFilter::Kind::ExcludePreviousNode);
  }

  bool entersLoop(std::size_t step) const {
    return grammar_.loop && grammar_.loop->backToStep == step;
  }

  // Qualifying edges of `step` at `node`, reached from `prev`.
  const std::vector<Edge>& expand(std::size_t step, TermId node, TermId prev) {
    auto key = std::make_tuple(step, node, prev);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Edge> raw;
    collect(step, node, raw);
    std::vector<Edge> kept;
    const auto& gs = grammar_.steps[step];
    for (const auto& e : raw) {
      if (passes(gs, node, prev, e.target)) kept.push_back(e);
    }
    return cache_.emplace(key, std::move(kept)).first->second;
  }

  // Whether an emit of `step` credits `target`.
  bool emitsTo(std::size_t step, TermId target) {
    const auto& gs = grammar_.steps[step];
    if (!gs.emit) return false;
    if (!store_.term(target).isIri()) return false;
    if (!gs.emit->typeRestriction) return true;
    return isInstanceOf(target, *gs.emit->typeRestriction);
  }

  std::string iriOf(TermId id) const { return store_.term(id).value(); }

 private:
  struct ResolvedStep {
    AssocKind assoc = AssocKind::None;
    bool wildcard = false;
    TermId predicate = kNoTerm;  // kNoTerm: no edges in the store
    TermId tagConcept = kNoTerm;
  };

  TermId idOf(const std::string& iri) const {
    auto id = store_.lookup(Term::iri(iri));
    return id ? *id : kNoTerm;
  }

  void resolveStep(const GrammarStep& step) {
    ResolvedStep r;
    if (step.predicate == kAnyPredicate) {
      r.wildcard = true;
    } else if (step.predicate == ns::relation("related")) {
      r.assoc = AssocKind::Related;
      buildAssociations();
    } else if (step.predicate == ns::relation("usage")) {
      r.assoc = AssocKind::Usage;
      buildAssociations();
    } else {
      if (!isAbsoluteIri(step.predicate)) {
        throw WalkError("bad predicate '" + step.predicate + "'");
      }
      r.predicate = idOf(step.predicate);
      bool used = r.predicate != kNoTerm &&
                  !store_.matchIds(kNoTerm, r.predicate, kNoTerm, kNoTerm)
                       .empty();
      if (!used && !vocab_.isProperty(step.predicate)) {
        throw WalkError("unknown predicate " + step.predicate);
      }
    }
    for (const auto& f : step.filters) {
      if (f.kind == StepFilter::Kind::RequireTagConcept) {
        r.tagConcept = idOf(f.iri);
      }
    }
    steps_.push_back(r);
  }

  void buildAssociations() {
    if (assocBuilt_) return;
    assocBuilt_ = true;
    const TermId subj = idOf(ns::core("subject"));
    const TermId obj = idOf(ns::core("object"));
    const TermId time = idOf(ns::core("insertTime"));
    auto single = [&](TermId node, TermId pred) {
      if (pred == kNoTerm) return kNoTerm;
      auto qs = store_.matchIds(node, pred, kNoTerm, kNoTerm);
      return qs.empty() ? kNoTerm : qs.front()[2];
    };
    auto build = [&](const std::string& cls, AssocKind kind) {
      const TermId clsId = idOf(cls);
      if (clsId == kNoTerm || rdfType_ == kNoTerm) return;
      auto& list = assoc_[kind];
      std::set<std::pair<TermId, TermId>> seen;
      for (const auto& q : store_.matchIds(kNoTerm, rdfType_, clsId, kNoTerm)) {
        if (!seen.insert({q[0], q[3]}).second) continue;
        AssocEdge e{q[3], single(q[0], subj), single(q[0], obj), std::nullopt};
        if (e.subject == kNoTerm || e.object == kNoTerm) continue;
        TermId t = single(q[0], time);
        if (t != kNoTerm && store_.term(t).isLiteral()) {
          try {
            e.insertTime = parseTimestamp(store_.term(t).value());
          } catch (const std::invalid_argument&) {
          }
        }
        list.push_back(e);
      }
      auto& idx = assocIndex_[kind];
      for (std::size_t i = 0; i < list.size(); ++i) {
        idx.bySubject[list[i].subject].push_back(i);
        idx.byObject[list[i].object].push_back(i);
        idx.byOwner[list[i].owner].push_back(i);
      }
    };
    build(ns::relation("related"), AssocKind::Related);
    build(ns::relation("usage"), AssocKind::Usage);
  }

  double edgeFactor(const GrammarStep& step,
                    const std::optional<Timestamp>& when) const {
    if (!step.timeDecay) return defaultFactor_;
    if (!when) return 1.0;
    double delta =
        std::chrono::duration<double>(now_ - *when).count();
    if (delta < 0.0) delta = 0.0;
    return std::exp2(-delta / step.timeDecay->halfLifeSeconds);
  }

  void collect(std::size_t stepIndex, TermId node, std::vector<Edge>& out) {
    const auto& gs = grammar_.steps[stepIndex];
    const auto& r = steps_[stepIndex];
    const bool out_ = gs.direction != StepDirection::In;
    const bool in_ = gs.direction != StepDirection::Out;
    auto addTargets = [&](TermId pred, Direction dir) {
      for (TermId t : store_.neighborIds(node, pred, dir)) {
        if (store_.term(t).isLiteral()) continue;
        out.push_back({t, defaultFactor_});
      }
    };
    if (r.assoc != AssocKind::None) {
      auto listIt = assoc_.find(r.assoc);
      if (listIt == assoc_.end()) return;
      const auto& list = listIt->second;
      const auto& idx = assocIndex_.at(r.assoc);
      const bool owner = gs.tail == AssociationTail::Owner;
      auto walk = [&](const std::map<TermId, std::vector<std::size_t>>& by,
                      bool forward) {
        auto it = by.find(node);
        if (it == by.end()) return;
        for (std::size_t i : it->second) {
          const auto& a = list[i];
          if (r.tagConcept != kNoTerm || gs.has(StepFilter::Kind::RequireTagConcept)) {
            if (a.subject != r.tagConcept) continue;
          }
          TermId target = forward ? a.object : (owner ? a.owner : a.subject);
          out.push_back({target, edgeFactor(gs, a.insertTime)});
        }
      };
      if (out_) walk(owner ? idx.byOwner : idx.bySubject, true);
      if (in_) walk(idx.byObject, false);
      return;
    }
    if (r.wildcard) {
      for (Direction dir : {Direction::Out, Direction::In}) {
        if ((dir == Direction::Out && !out_) || (dir == Direction::In && !in_)) {
          continue;
        }
        for (TermId pred : store_.predicatesAt(node, dir)) {
          if (isSchemaPredicate(store_.term(pred).value())) continue;
          for (TermId t : store_.neighborIds(node, pred, dir)) {
            const Term& term = store_.term(t);
            if (term.isLiteral()) continue;
            if (term.isIri() && vocab_.isTerm(term.value())) continue;
            out.push_back({t, defaultFactor_});
          }
        }
      }
      return;
    }
    if (r.predicate == kNoTerm) return;
    if (out_) addTargets(r.predicate, Direction::Out);
    if (in_) addTargets(r.predicate, Direction::In);
  }

  bool passes(const GrammarStep& gs, TermId node, TermId prev, TermId target) {
    for (const auto& f : gs.filters) {
      switch (f.kind) {
        case StepFilter::Kind::ExcludePreviousNode:
          if (target == prev) return false;
          break;
        case StepFilter::Kind::ExcludeSeeds:
          if (seedSet_.contains(target)) return false;
          break;
        case StepFilter::Kind::NotSelf:
          if (target == node) return false;
          break;
        case StepFilter::Kind::RequireType:
          if (!isInstanceOf(target, f.iri)) return false;
          break;
        case StepFilter::Kind::RequireTagConcept:
          break;  // applied while collecting association edges
      }
    }
    return true;
  }

  bool isInstanceOf(TermId node, const std::string& cls) {
    if (cls == ns::owl("Thing")) return !store_.term(node).isLiteral();
    auto key = std::make_pair(node, cls);
    if (auto it = instance_.find(key); it != instance_.end()) return it->second;
    bool result = false;
    if (rdfType_ != kNoTerm) {
      for (const auto& q : store_.matchIds(node, rdfType_, kNoTerm, kNoTerm)) {
        if (closureOf(q[2]).contains(cls)) {
          result = true;
          break;
        }
      }
    }
    instance_.emplace(key, result);
    return result;
  }

  const std::set<std::string>& closureOf(TermId type) {
    auto it = closures_.find(type);
    if (it != closures_.end()) return it->second;
    std::set<std::string> c;
    const std::string& iri = store_.term(type).value();
    if (vocab_.isClass(iri)) {
      c = vocab_.subclassClosure(iri);
    } else {
      c.insert(iri);
    }
    return closures_.emplace(type, std::move(c)).first->second;
  }

  struct AssocIndex {
    std::map<TermId, std::vector<std::size_t>> bySubject, byObject, byOwner;
  };

  const QuadStore& store_;
  const Vocabulary& vocab_;
  const Grammar& grammar_;
  const WalkerConfig& cfg_;
  std::vector<TermId> seeds_;
  std::set<TermId> seedSet_;
  TermId rdfType_ = kNoTerm;
  double defaultFactor_ = 1.0;
  Timestamp now_;
  std::vector<ResolvedStep> steps_;
  bool assocBuilt_ = false;
  std::map<AssocKind, std::vector<AssocEdge>> assoc_;
  std::map<AssocKind, AssocIndex> assocIndex_;
  std::map<std::tuple<std::size_t, TermId, TermId>, std::vector<Edge>> cache_;
  std::map<std::pair<TermId, std::string>, bool> instance_;
  std::map<TermId, std::set<std::string>> closures_;
};

struct ParcelKey {
  TermId node;
  TermId prev;
  double energy;
  auto operator<=>(const ParcelKey&) const = default;
};

WalkResult diffuse(Execution& ex) {
  const auto& g = ex.grammar();
  const auto& cfg = ex.cfg();
  WalkResult result;
  std::map<TermId, double> scores;
  std::map<ParcelKey, double> frontier;
  for (TermId s : ex.seeds()) frontier[{s, kNoTerm, cfg.initialEnergy}] += 1.0;

  for (std::size_t hop = 0; hop < cfg.maxSteps && !frontier.empty(); ++hop) {
    auto step = g.stepAt(hop);
    if (!step) break;
    result.stats.hops = static_cast<std::uint32_t>(hop + 1);
    const bool loopEntry = ex.entersLoop(*step);
    const bool keepPrev = ex.needsPrevious(hop + 1);
    const int sign = g.steps[*step].emit ? g.steps[*step].emit->sign : 0;
    std::map<ParcelKey, double> next;
    for (const auto& [key, mass] : frontier) {
      ++result.stats.parcels;
      double energy = key.energy;
      if (loopEntry) energy *= g.loop->decayPerLoop;
      if (energy < cfg.energyThreshold) continue;
      const auto& edges = ex.expand(*step, key.node, key.prev);
      if (edges.empty()) continue;
      const double share = g.split ? mass / static_cast<double>(edges.size())
                                   : mass;
      for (const auto& e : edges) {
        ++result.stats.edges;
        const double after = energy * e.factor;
        if (sign != 0 && ex.emitsTo(*step, e.target)) {
          scores[e.target] += sign * share * after;
        }
        if (after < cfg.energyThreshold) continue;
        next[{e.target, keepPrev ? key.node : kNoTerm, after}] += share;
      }
    }
    frontier = std::move(next);
  }

  std::map<std::string, double> named;
  for (const auto& [id, score] : scores) named[ex.iriOf(id)] = score;
  result.ranking = RankedList(named);
  return result;
}

struct WalkerState {
  TermId node;
  TermId prev;
  double energy;
  std::size_t hop;
};

WalkResult monteCarlo(Execution& ex) {
  const auto& g = ex.grammar();
  const auto& cfg = ex.cfg();
  WalkResult result;
  std::mt19937_64 rng(cfg.rngSeed);
  const double n = cfg.walkersPerSeed;
  std::map<TermId, double> score;
  std::map<TermId, double> variance;

  for (TermId seed : ex.seeds()) {
    std::map<TermId, double> sum, sumSq;
    for (std::uint32_t w = 0; w < cfg.walkersPerSeed; ++w) {
      ++result.stats.parcels;
      std::map<TermId, double> contrib;
      std::vector<WalkerState> stack{{seed, kNoTerm, cfg.initialEnergy, 0}};
      while (!stack.empty()) {
        WalkerState st = stack.back();
        stack.pop_back();
        if (st.hop >= cfg.maxSteps) continue;
        auto step = g.stepAt(st.hop);
        if (!step) continue;
        result.stats.hops =
            std::max(result.stats.hops, static_cast<std::uint32_t>(st.hop + 1));
        double energy = st.energy;
        if (ex.entersLoop(*step)) energy *= g.loop->decayPerLoop;
        if (energy < cfg.energyThreshold) continue;
        const auto& edges = ex.expand(*step, st.node, st.prev);
        if (edges.empty()) continue;
        const int sign = g.steps[*step].emit ? g.steps[*step].emit->sign : 0;
        const bool keepPrev = ex.needsPrevious(st.hop + 1);
        auto follow = [&](const Edge& e) {
          ++result.stats.edges;
          const double after = energy * e.factor;
          if (sign != 0 && ex.emitsTo(*step, e.target)) {
            contrib[e.target] += sign * after;
          }
          if (after >= cfg.energyThreshold) {
            stack.push_back(
                {e.target, keepPrev ? st.node : kNoTerm, after, st.hop + 1});
          }
        };
        if (g.split) {
          std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
          follow(edges[pick(rng)]);
        } else {
          for (const auto& e : edges) follow(e);
        }
      }
      for (const auto& [id, c] : contrib) {
        sum[id] += c;
        sumSq[id] += c * c;
      }
    }
    for (const auto& [id, s] : sum) {
      const double mean = s / n;
      score[id] += mean;
      double var = 0.0;
      if (cfg.walkersPerSeed > 1) {
        var = std::max(0.0, (sumSq[id] - n * mean * mean) / (n - 1.0));
      }
      variance[id] += var / n;
    }
  }

  std::map<std::string, double> named;
  for (const auto& [id, s] : score) {
    named[ex.iriOf(id)] = s;
    result.standardErrors[ex.iriOf(id)] = std::sqrt(variance[id]);
  }
  result.ranking = RankedList(named);
  return result;
}

}  // namespace

Walker::Walker(const QuadStore& store, const Vocabulary& vocab)
    : store_(store), vocab_(vocab) {}

WalkResult Walker::run(const Grammar& grammar,
                       const std::vector<std::string>& seeds,
                       const WalkerConfig& cfg) const {
  Execution ex(store_, vocab_, grammar, seeds, cfg);
  return cfg.mode == WalkMode::Diffusion ? diffuse(ex) : monteCarlo(ex);
}

}  // namespace reef
