#include "reef/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reef/namespaces.hpp"

namespace reef {

using nlohmann::json;

namespace {

bool isParam(const std::string& s) { return s.size() > 1 && s.front() == '$'; }

std::string expandIri(const std::string& s, const char* what) {
  if (s == kAnyPredicate || isParam(s)) return s;
  auto iri = ns::expand(s);
  if (!iri) throw GrammarError(std::string("bad ") + what + " IRI '" + s + "'");
  return *iri;
}

std::string compactIri(const std::string& s) {
  if (s == kAnyPredicate || isParam(s)) return s;
  return ns::compact(s);
}

struct FilterName {
  StepFilter::Kind kind;
  const char* name;
};
constexpr FilterName kFilterNames[] = {
    {StepFilter::Kind::ExcludePreviousNode, "exclude-previous-node"},
    {StepFilter::Kind::ExcludeSeeds, "exclude-seeds"},
    {StepFilter::Kind::NotSelf, "not-self"},
    {StepFilter::Kind::RequireType, "require-type"},
    {StepFilter::Kind::RequireTagConcept, "require-tag-concept"},
};

StepFilter::Kind filterKind(const std::string& name) {
  for (const auto& f : kFilterNames) {
    if (name == f.name) return f.kind;
  }
  throw GrammarError("unknown filter '" + name + "'");
}

const char* filterName(StepFilter::Kind kind) {
  for (const auto& f : kFilterNames) {
    if (kind == f.kind) return f.name;
  }
  return "?";
}

bool takesIri(StepFilter::Kind kind) {
  return kind == StepFilter::Kind::RequireType ||
         kind == StepFilter::Kind::RequireTagConcept;
}

StepFilter parseFilter(const json& j) {
  if (j.is_string()) {
    auto kind = filterKind(j.get<std::string>());
    if (takesIri(kind)) {
      throw GrammarError(std::string("filter '") + filterName(kind) +
                         "' needs an IRI argument");
    }
    return {kind, {}};
  }
  if (j.is_object() && j.size() == 1) {
    auto it = j.begin();
    auto kind = filterKind(it.key());
    if (!takesIri(kind) || !it.value().is_string()) {
      throw GrammarError("bad arguments for filter '" + it.key() + "'");
    }
    return {kind, expandIri(it.value().get<std::string>(), "filter")};
  }
  throw GrammarError("filters must be strings or single-key objects");
}

// Numbers may be given literally or as a "$param" placeholder.
void readNumber(const json& j, const char* what, double& value,
                std::string& param) {
  if (j.is_number()) {
    value = j.get<double>();
    param.clear();
  } else if (j.is_string() && isParam(j.get<std::string>())) {
    param = j.get<std::string>();
  } else {
    throw GrammarError(std::string(what) + " must be a number or $param");
  }
}

GrammarStep parseStep(const json& j) {
  if (!j.is_object()) throw GrammarError("each step must be an object");
  GrammarStep step;
  step.predicate = expandIri(j.at("predicate").get<std::string>(), "predicate");
  auto dir = j.value("direction", std::string("out"));
  if (dir == "out") {
    step.direction = StepDirection::Out;
  } else if (dir == "in") {
    step.direction = StepDirection::In;
  } else if (dir == "both") {
    step.direction = StepDirection::Both;
  } else {
    throw GrammarError("unknown direction '" + dir + "'");
  }
  auto tail = j.value("tail", std::string("subject"));
  if (tail == "subject") {
    step.tail = AssociationTail::Subject;
  } else if (tail == "owner") {
    step.tail = AssociationTail::Owner;
  } else {
    throw GrammarError("unknown association tail '" + tail + "'");
  }
  if (j.contains("filters")) {
    for (const auto& f : j.at("filters")) step.filters.push_back(parseFilter(f));
  }
  if (j.contains("emit")) {
    const auto& e = j.at("emit");
    Emit emit;
    auto sign = e.value("sign", std::string("+"));
    if (sign == "+") {
      emit.sign = +1;
    } else if (sign == "-") {
      emit.sign = -1;
    } else {
      throw GrammarError("emit sign must be '+' or '-'");
    }
    if (e.contains("type")) {
      emit.typeRestriction = expandIri(e.at("type").get<std::string>(), "type");
    }
    step.emit = emit;
  }
  if (j.contains("timeDecay")) {
    const auto& t = j.at("timeDecay");
    auto source = t.value("timestampSource", std::string("related-insertTime"));
    if (source != "related-insertTime") {
      throw GrammarError("unsupported timestampSource '" + source + "'");
    }
    TimeDecay decay;
    readNumber(t.at("halfLife"), "halfLife", decay.halfLifeSeconds,
               decay.halfLifeParam);
    step.timeDecay = decay;
  }
  return step;
}

double paramNumber(const GrammarParams& params, const std::string& name,
                   bool& bound) {
  auto it = params.find(name.substr(1));
  bound = it != params.end();
  if (!bound) return 0.0;
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw GrammarError("parameter " + name + " is not a number: '" +
                       it->second + "'");
  }
}

std::string paramIri(const GrammarParams& params, const std::string& value) {
  if (!isParam(value)) return value;
  auto it = params.find(value.substr(1));
  if (it == params.end()) return value;
  auto iri = ns::expand(it->second);
  if (!iri) throw GrammarError("parameter " + value + " is not an IRI");
  return *iri;
}

}  // namespace

bool GrammarStep::has(StepFilter::Kind kind) const {
  return std::any_of(filters.begin(), filters.end(),
                     [kind](const StepFilter& f) { return f.kind == kind; });
}

void Grammar::validate() const {
  if (steps.empty()) throw GrammarError("grammar '" + name + "' has no steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    bool association = step.predicate == ns::relation("related") ||
                       step.predicate == ns::relation("usage");
    if (step.has(StepFilter::Kind::RequireTagConcept) && !association) {
      throw GrammarError("step " + std::to_string(i) +
                         ": require-tag-concept needs a relation step");
    }
    if (step.timeDecay && step.predicate != ns::relation("related")) {
      throw GrammarError("step " + std::to_string(i) +
                         ": time decay reads relation:related insert times");
    }
    if (step.tail == AssociationTail::Owner && !association) {
      throw GrammarError("step " + std::to_string(i) +
                         ": owner tail needs a relation step");
    }
    if (step.timeDecay && step.timeDecay->halfLifeParam.empty() &&
        !(step.timeDecay->halfLifeSeconds > 0.0)) {
      throw GrammarError("step " + std::to_string(i) +
                         ": half-life must be positive");
    }
  }
  if (loop) {
    if (loop->backToStep >= steps.size()) {
      throw GrammarError("loop target " + std::to_string(loop->backToStep) +
                         " is outside the grammar");
    }
    if (loop->decayParam.empty() &&
        !(loop->decayPerLoop >= 0.0 && loop->decayPerLoop <= 1.0)) {
      throw GrammarError("loop decay must lie in [0,1]");
    }
  }
}

Grammar Grammar::bind(const GrammarParams& params) const {
  Grammar out = *this;
  for (auto& step : out.steps) {
    step.predicate = paramIri(params, step.predicate);
    for (auto& f : step.filters) f.iri = paramIri(params, f.iri);
    if (step.emit && step.emit->typeRestriction) {
      step.emit->typeRestriction = paramIri(params, *step.emit->typeRestriction);
    }
    if (step.timeDecay && !step.timeDecay->halfLifeParam.empty()) {
      bool bound = false;
      double v = paramNumber(params, step.timeDecay->halfLifeParam, bound);
      if (bound) {
        step.timeDecay->halfLifeSeconds = v;
        step.timeDecay->halfLifeParam.clear();
      }
    }
  }
  if (out.loop) {
    if (!out.loop->decayParam.empty()) {
      bool bound = false;
      double v = paramNumber(params, out.loop->decayParam, bound);
      if (bound) {
        out.loop->decayPerLoop = v;
        out.loop->decayParam.clear();
      }
    }
    if (!out.loop->maxPassesParam.empty()) {
      bool bound = false;
      double v = paramNumber(params, out.loop->maxPassesParam, bound);
      if (bound) {
        if (v < 0 || v != std::floor(v)) {
          throw GrammarError("maxPasses must be a non-negative integer");
        }
        out.loop->maxPasses = static_cast<std::size_t>(v);
        out.loop->maxPassesParam.clear();
      }
    }
  }
  out.validate();
  return out;
}

bool Grammar::fullyBound() const {
  for (const auto& step : steps) {
    if (isParam(step.predicate)) return false;
    for (const auto& f : step.filters) {
      if (isParam(f.iri)) return false;
    }
    if (step.emit && step.emit->typeRestriction &&
        isParam(*step.emit->typeRestriction)) {
      return false;
    }
    if (step.timeDecay && !step.timeDecay->halfLifeParam.empty()) return false;
  }
  if (loop && (!loop->decayParam.empty() || !loop->maxPassesParam.empty())) {
    return false;
  }
  return true;
}

std::optional<std::size_t> Grammar::stepAt(std::size_t hop) const {
  const std::size_t n = steps.size();
  if (!loop) {
    if (hop < n) return hop;
    return std::nullopt;
  }
  const std::size_t b = loop->backToStep;
  std::size_t step = 0;
  std::size_t pass = 0;  // 1-based pass through the loop body, 0 = before it
  if (hop < n) {
    step = hop;
    pass = hop >= b ? 1 : 0;
  } else {
    const std::size_t bodyLength = n - b;
    const std::size_t k = hop - n;
    step = b + k % bodyLength;
    pass = 2 + k / bodyLength;
  }
  if (pass > 0 && loop->maxPasses && pass > *loop->maxPasses) {
    return std::nullopt;
  }
  return step;
}

Grammar parseGrammar(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GrammarError(std::string("malformed grammar JSON: ") + e.what());
  }
  try {
    Grammar g;
    g.name = j.value("name", std::string{});
    g.description = j.value("description", std::string{});
    g.experimental = j.value("experimental", false);
    g.split = j.value("split", true);
    for (const auto& s : j.at("steps")) g.steps.push_back(parseStep(s));
    if (j.contains("loop")) {
      const auto& l = j.at("loop");
      GrammarLoop loop;
      auto back = l.at("backToStep").get<long long>();
      if (back < 0) throw GrammarError("loop target must be non-negative");
      loop.backToStep = static_cast<std::size_t>(back);
      if (l.contains("decayPerLoop")) {
        readNumber(l.at("decayPerLoop"), "decayPerLoop", loop.decayPerLoop,
                   loop.decayParam);
      }
      if (l.contains("maxPasses")) {
        double passes = 0;
        readNumber(l.at("maxPasses"), "maxPasses", passes,
                   loop.maxPassesParam);
        if (loop.maxPassesParam.empty()) {
          if (passes < 0 || passes != std::floor(passes)) {
            throw GrammarError("maxPasses must be a non-negative integer");
          }
          loop.maxPasses = static_cast<std::size_t>(passes);
        }
      }
      g.loop = loop;
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw GrammarError(std::string("invalid grammar: ") + e.what());
  }
}

std::string grammarToJson(const Grammar& g) {
  json j;
  j["name"] = g.name;
  j["description"] = g.description;
  j["experimental"] = g.experimental;
  j["split"] = g.split;
  j["steps"] = json::array();
  for (const auto& step : g.steps) {
    json s;
    s["predicate"] = compactIri(step.predicate);
    s["direction"] = step.direction == StepDirection::Out  ? "out"
                     : step.direction == StepDirection::In ? "in"
                                                           : "both";
    if (step.tail == AssociationTail::Owner) s["tail"] = "owner";
    if (!step.filters.empty()) {
      s["filters"] = json::array();
      for (const auto& f : step.filters) {
        if (takesIri(f.kind)) {
          s["filters"].push_back({{filterName(f.kind), compactIri(f.iri)}});
        } else {
          s["filters"].push_back(filterName(f.kind));
        }
      }
    }
    if (step.emit) {
      s["emit"]["sign"] = step.emit->sign > 0 ? "+" : "-";
      if (step.emit->typeRestriction) {
        s["emit"]["type"] = compactIri(*step.emit->typeRestriction);
      }
    }
    if (step.timeDecay) {
      if (step.timeDecay->halfLifeParam.empty()) {
        s["timeDecay"]["halfLife"] = step.timeDecay->halfLifeSeconds;
      } else {
        s["timeDecay"]["halfLife"] = step.timeDecay->halfLifeParam;
      }
      s["timeDecay"]["timestampSource"] = "related-insertTime";
    }
    j["steps"].push_back(s);
  }
  if (g.loop) {
    j["loop"]["backToStep"] = g.loop->backToStep;
    if (g.loop->decayParam.empty()) {
      j["loop"]["decayPerLoop"] = g.loop->decayPerLoop;
    } else {
      j["loop"]["decayPerLoop"] = g.loop->decayParam;
    }
    if (!g.loop->maxPassesParam.empty()) {
      j["loop"]["maxPasses"] = g.loop->maxPassesParam;
    } else if (g.loop->maxPasses) {
      j["loop"]["maxPasses"] = *g.loop->maxPasses;
    }
  }
  return j.dump(2);
}

GrammarRegistry::GrammarRegistry(std::filesystem::path directory)
    : dir_(std::move(directory)) {}

GrammarRegistry GrammarRegistry::fromEnvironment() {
  if (const char* env = std::getenv("REEF_GRAMMAR_DIR"); env && *env) {
    return GrammarRegistry(env);
  }
  return GrammarRegistry(REEF_GRAMMAR_DIR);
}

Grammar GrammarRegistry::load(const std::string& name) const {
  bool safe = !name.empty() &&
              std::all_of(name.begin(), name.end(), [](char c) {
                return std::isalnum(static_cast<unsigned char>(c)) ||
                       c == '-' || c == '_';
              });
  if (!safe) throw UnknownGrammar("unknown grammar '" + name + "'");
  auto path = dir_ / (name + ".json");
  std::ifstream in(path);
  if (!in) throw UnknownGrammar("unknown grammar '" + name + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Grammar g;
  try {
    g = parseGrammar(buf.str());
  } catch (const GrammarError& e) {
    throw GrammarError(path.string() + ": " + e.what());
  }
  if (g.name.empty()) g.name = name;
  return g;
}

std::vector<std::string> GrammarRegistry::names() const {
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(dir_)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() == ".json") {
      out.push_back(entry.path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reef
