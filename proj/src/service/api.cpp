#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "reef/namespaces.hpp"
#include "reef/reasoning.hpp"
#include "reef/recommenders.hpp"
#include "reef/relations.hpp"
#include "reef/service.hpp"
#include "reef/translate.hpp"

namespace reef {

using nlohmann::json;

namespace {

class HttpError : public std::runtime_error {
 public:
  HttpError(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

ApiResponse respond(json body, int status = 200) {
  body["v"] = 1;
  return {status, body.dump()};
}

ApiResponse error(int status, const std::string& message) {
  return respond({{"error", message}}, status);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<std::string> headerValue(const ApiRequest& r,
                                       const std::string& name) {
  const auto wanted = lower(name);
  for (const auto& [k, v] : r.headers) {
    if (lower(k) == wanted) return v;
  }
  return std::nullopt;
}

std::optional<std::string> queryValue(const ApiRequest& r,
                                      const std::string& name) {
  auto it = r.query.find(name);
  if (it == r.query.end()) return std::nullopt;
  return it->second;
}

std::string requireIri(const std::string& value, const char* what) {
  auto iri = ns::expand(value);
  if (!iri) throw HttpError(400, std::string(what) + " is not an IRI: " + value);
  return *iri;
}

json termJson(const Term& t) {
  json j;
  if (t.isIri()) {
    j["type"] = "iri";
  } else if (t.isBlank()) {
    j["type"] = "blank";
  } else {
    j["type"] = "literal";
    j["datatype"] = t.datatype();
    if (!t.language().empty()) j["lang"] = t.language();
  }
  j["value"] = t.value();
  return j;
}

json rankedJson(const RankedList& list) {
  json results = json::array();
  for (const auto& e : list) {
    results.push_back({{"resource", e.resource}, {"score", e.score}});
  }
  return results;
}

json parseBody(const ApiRequest& r) {
  if (r.body.empty()) return json::object();
  try {
    json j = json::parse(r.body);
    if (!j.is_object()) throw HttpError(400, "request body must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw HttpError(400, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<std::string> iriList(const json& body, const char* key) {
  std::vector<std::string> out;
  if (!body.contains(key)) return out;
  const auto& arr = body.at(key);
  if (!arr.is_array()) throw HttpError(400, std::string(key) + " must be a list");
  for (const auto& v : arr) {
    if (!v.is_string()) throw HttpError(400, std::string(key) + " must hold strings");
    out.push_back(requireIri(v.get<std::string>(), key));
  }
  return out;
}

WalkerConfig configFrom(const json& body) {
  WalkerConfig cfg;
  if (!body.contains("cfg")) return cfg;
  const auto& c = body.at("cfg");
  if (!c.is_object()) throw HttpError(400, "cfg must be an object");
  if (c.contains("mode")) {
    auto mode = c.at("mode").get<std::string>();
    if (mode == "diffusion") {
      cfg.mode = WalkMode::Diffusion;
    } else if (mode == "montecarlo") {
      cfg.mode = WalkMode::MonteCarlo;
    } else {
      throw HttpError(400, "unknown walk mode '" + mode + "'");
    }
  }
  cfg.walkersPerSeed = c.value("walkersPerSeed", cfg.walkersPerSeed);
  cfg.initialEnergy = c.value("initialEnergy", cfg.initialEnergy);
  cfg.decay = c.value("decay", cfg.decay);
  cfg.energyThreshold = c.value("energyThreshold", cfg.energyThreshold);
  cfg.maxSteps = c.value("maxSteps", cfg.maxSteps);
  cfg.rngSeed = c.value("rngSeed", cfg.rngSeed);
  if (c.contains("now")) cfg.now = parseTimestamp(c.at("now").get<std::string>());
  return cfg;
}

bool exists(const QuadStore& store, const Term& t) {
  return !store.match(t, std::nullopt, std::nullopt, std::nullopt).empty() ||
         !store.match(std::nullopt, std::nullopt, t, std::nullopt).empty();
}

std::string firstLiteral(const QuadStore& store, const Term& s,
                         const char* local) {
  for (const auto& o :
       store.neighbors(s, Term::iri(ns::core(local)), Direction::Out)) {
    if (o.isLiteral()) return o.value();
  }
  return {};
}

// Absolute IRIs and CURIEs name a concept directly; anything else is read as
// a concept label.
Term conceptFor(const std::string& text) {
  if (auto iri = ns::expand(text)) return Term::iri(*iri);
  ResourceFields fields{ResourceKind::Concept, {}, text, {}, {}};
  return resourceIri(ResourceKind::Concept, dedupKey(fields));
}

std::size_t occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

Api::Api(SharedStore& store, const Vocabulary& vocab, GrammarRegistry registry,
         Clock clock)
    : store_(store),
      vocab_(vocab),
      registry_(std::move(registry)),
      clock_(std::move(clock)) {}

std::optional<Session> Api::session(const std::string& id) const {
  std::lock_guard lock(sessionsMutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

Api::Caller Api::identify(const ApiRequest& r) {
  Caller c;
  c.sessionId = headerValue(r, kSessionHeader);
  if (!c.sessionId) c.sessionId = queryValue(r, "session");
  auto user = headerValue(r, kUserHeader);
  if (!user) user = queryValue(r, "user");
  if (user) c.user = requireIri(*user, "user");

  if (c.sessionId) {
    std::lock_guard lock(sessionsMutex_);
    auto it = sessions_.find(*c.sessionId);
    if (it == sessions_.end()) {
      if (c.user) sessions_[*c.sessionId] = Session{*c.sessionId, *c.user, {}};
    } else if (c.user && *c.user != it->second.user) {
      throw HttpError(401, "session belongs to another user");
    } else {
      c.user = it->second.user;
    }
  }
  return c;
}

ApiResponse Api::handle(const ApiRequest& r) {
  try {
    const std::string& p = r.path;
    const bool get = r.method == "GET";
    const bool post = r.method == "POST";
    if (p == "/resource" || p.rfind("/resource/", 0) == 0) {
      if (!get) return error(405, "method not allowed");
      std::string id = p.size() > 10 ? p.substr(10) : queryValue(r, "id").value_or("");
      if (id.empty()) return error(400, "missing resource id");
      return view(r, id);
    }
    if (p == "/search") return get ? search(r) : error(405, "method not allowed");
    if (p == "/discover") return post ? discover(r) : error(405, "method not allowed");
    if (p == "/reasoner") return post ? reasoner(r) : error(405, "method not allowed");
    if (p == "/tag") return post ? tagResource(r) : error(405, "method not allowed");
    if (p == "/organize") return get ? organize(r) : error(405, "method not allowed");
    if (p == "/news") return get ? news(r) : error(405, "method not allowed");
    if (p == "/grammars") return get ? grammars() : error(405, "method not allowed");
    return error(404, "no such endpoint: " + p);
  } catch (const HttpError& e) {
    return error(e.status(), e.what());
  } catch (const UnknownGrammar& e) {
    return error(422, e.what());
  } catch (const UnknownSeed& e) {
    return error(404, e.what());
  } catch (const WalkError& e) {
    return error(400, e.what());
  } catch (const GrammarError& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

ApiResponse Api::view(const ApiRequest& r, const std::string& rawId) {
  const Caller caller = identify(r);
  const Term id = Term::iri(requireIri(rawId, "resource id"));
  const Term type = Term::iri(ns::rdf("type"));
  json out;
  {
    auto view = store_.read();
    const QuadStore& store = *view;
    if (!exists(store, id)) throw HttpError(404, "unknown resource " + id.value());

    std::set<std::string> types;
    for (const auto& t : store.neighbors(id, type, Direction::Out)) {
      if (t.isIri()) types.insert(t.value());
    }
    out["id"] = id.value();
    out["types"] = types;
    const std::string specific = mostSpecificType(store, vocab_, id);
    out["abbrev"] = specific.empty() ? "" : vocab_.abbrev(specific);
    out["title"] = firstLiteral(store, id, "title");
    out["abstract"] = firstLiteral(store, id, "abstract");

    auto group = [&](const std::vector<Quad>& quads, bool outgoing) {
      json groups = json::object();
      std::map<std::string, std::set<Term>> byPredicate;
      for (const auto& q : quads) {
        const Term& other = outgoing ? q.object : q.subject;
        if (!outgoing && other.isBlank()) continue;  // relation nodes: see tags
        byPredicate[q.predicate.value()].insert(other);
      }
      for (const auto& [pred, terms] : byPredicate) {
        json values = json::array();
        for (const auto& t : terms) {
          if (values.size() == kViewFanOut) break;
          values.push_back(termJson(t));
        }
        groups[pred] = {{"total", terms.size()}, {"values", values}};
      }
      return groups;
    };
    out["outgoing"] =
        group(store.match(id, std::nullopt, std::nullopt, std::nullopt), true);
    out["incoming"] =
        group(store.match(std::nullopt, std::nullopt, id, std::nullopt), false);

    json tags = json::array();
    for (const auto& a : associations(store)) {
      if (a.object != id) continue;
      tags.push_back({{"concept", a.subject.value()},
                      {"weight", a.weight},
                      {"tagger", a.owner.value()}});
    }
    out["tags"] = tags;
  }

  if (caller.sessionId && caller.user) {
    std::optional<std::string> previous;
    {
      std::lock_guard lock(sessionsMutex_);
      auto& s = sessions_.at(*caller.sessionId);
      previous = s.lastViewed;
      s.lastViewed = id.value();
    }
    if (previous && *previous != id.value()) {
      const Term user = Term::iri(*caller.user);
      const Timestamp at = clock_();
      store_.write([&](QuadStore& store) {
        recordUsage(store, user, Term::iri(*previous), id, at);
      });
      out["usageFrom"] = *previous;
    }
  }
  return respond(out);
}

ApiResponse Api::search(const ApiRequest& r) {
  const std::string q = queryValue(r, "q").value_or("");
  std::vector<std::string> tokens;
  {
    std::istringstream in(lower(q));
    for (std::string t; in >> t;) tokens.push_back(t);
  }
  if (tokens.empty()) return error(400, "empty query");

  auto view = store_.read();
  const QuadStore& store = *view;
  std::map<std::string, std::string> text;
  std::map<std::string, std::string> titles;
  for (const char* field : {"title", "abstract"}) {
    for (const auto& quad : store.match(std::nullopt,
                                        Term::iri(ns::core(field)),
                                        std::nullopt, std::nullopt)) {
      if (!quad.subject.isIri() || !quad.object.isLiteral()) continue;
      text[quad.subject.value()] += lower(quad.object.value()) + "\n";
      if (std::string(field) == "title") {
        titles.try_emplace(quad.subject.value(), quad.object.value());
      }
    }
  }
  std::map<std::string, double> scores;
  for (const auto& [iri, body] : text) {
    std::size_t n = 0;
    for (const auto& t : tokens) n += occurrences(body, t);
    if (n > 0) scores[iri] = static_cast<double>(n);
  }
  json results = json::array();
  for (const auto& e : RankedList(scores)) {
    results.push_back({{"resource", e.resource},
                       {"score", e.score},
                       {"title", titles.count(e.resource) ? titles[e.resource] : ""}});
  }
  return respond({{"query", q}, {"results", results}});
}

ApiResponse Api::discover(const ApiRequest& r) {
  identify(r);
  json body = parseBody(r);
  DiscoverRequest req;
  req.seeds = iriList(body, "seeds");
  if (req.seeds.empty()) return error(400, "discover needs seeds");
  if (body.contains("returnTypes")) {
    for (const auto& t : body.at("returnTypes")) {
      req.returnTypes.push_back(t.get<std::string>());
    }
  }
  req.cfg = configFrom(body);
  auto view = store_.read();
  Recommenders rec(*view, vocab_, registry_);
  return respond({{"results", rankedJson(rec.discover(req))}});
}

ApiResponse Api::reasoner(const ApiRequest& r) {
  const Caller caller = identify(r);
  json body = parseBody(r);
  if (!body.contains("name") || !body.at("name").is_string()) {
    return error(400, "missing grammar name");
  }
  const std::string name = body.at("name").get<std::string>();
  GrammarParams params;
  if (body.contains("params")) {
    for (const auto& [k, v] : body.at("params").items()) {
      params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  if (name == "news" && caller.user) params.try_emplace("user", *caller.user);
  const auto seeds = iriList(body, "seeds");
  const WalkerConfig cfg = configFrom(body);
  auto view = store_.read();
  Recommenders rec(*view, vocab_, registry_);
  RankedList list = rec.recommend(name, seeds, params, cfg);
  return respond({{"name", name}, {"results", rankedJson(list)}});
}

ApiResponse Api::tagResource(const ApiRequest& r) {
  const Caller caller = identify(r);
  if (!caller.user) return error(401, "tagging needs a session user");
  json body = parseBody(r);
  if (!body.contains("concept") || !body.contains("resource")) {
    return error(400, "tag needs concept and resource");
  }
  const std::string conceptText = body.at("concept").get<std::string>();
  const bool byLabel = !ns::expand(conceptText).has_value();
  const Term conceptTerm = conceptFor(conceptText);
  const Term resource =
      Term::iri(requireIri(body.at("resource").get<std::string>(), "resource"));
  const double weight = body.value("weight", 1.0);
  const Timestamp at = body.contains("at")
                           ? parseTimestamp(body.at("at").get<std::string>())
                           : clock_();
  const Term user = Term::iri(*caller.user);
  const Term g = graphOf(user);
  const Term type = Term::iri(ns::rdf("type"));

  Term node = store_.write([&](QuadStore& store) {
    if (!exists(store, resource)) {
      throw HttpError(404, "unknown resource " + resource.value());
    }
    if (!byLabel && !exists(store, conceptTerm)) {
      throw HttpError(404, "unknown concept " + conceptTerm.value());
    }
    if (byLabel && store.neighbors(conceptTerm, type, Direction::Out).empty()) {
      store.insert({conceptTerm, type, Term::iri(ns::core("Concept")), g});
      store.insert({conceptTerm, Term::iri(ns::core("title")),
                    Term::literal(conceptText), g});
    }
    return tag(store, user, conceptTerm, resource, weight, at);
  });
  return respond({{"node", node.toNQuads()},
                  {"concept", conceptTerm.value()},
                  {"resource", resource.value()},
                  {"weight", weight},
                  {"insertTime", formatTimestamp(at)}});
}

ApiResponse Api::organize(const ApiRequest& r) {
  const Caller caller = identify(r);
  if (!caller.user) return error(401, "organize needs a session user");
  auto view = store_.read();
  const QuadStore& store = *view;
  std::map<std::string, json> folders;
  for (const auto& a : associations(store, Term::iri(*caller.user))) {
    auto& folder = folders[a.subject.value()];
    if (folder.is_null()) {
      folder = {{"concept", a.subject.value()},
                {"title", firstLiteral(store, a.subject, "title")},
                {"resources", json::array()}};
    }
    json entry = {{"resource", a.object.value()}, {"weight", a.weight}};
    if (a.insertTime) entry["insertTime"] = formatTimestamp(*a.insertTime);
    folder["resources"].push_back(entry);
  }
  json list = json::array();
  for (auto& [k, f] : folders) list.push_back(std::move(f));
  return respond({{"user", *caller.user}, {"folders", list}});
}

ApiResponse Api::news(const ApiRequest& r) {
  const Caller caller = identify(r);
  if (!caller.user) return error(401, "news needs a session user");
  auto conceptText = queryValue(r, "concept");
  if (!conceptText || conceptText->empty()) return error(400, "missing concept");
  NewsRequest req;
  req.user = *caller.user;
  req.conceptIri = conceptFor(*conceptText).value();
  auto now = queryValue(r, "now");
  req.now = now ? parseTimestamp(*now) : clock_();
  if (auto h = queryValue(r, "halfLife")) {
    try {
      req.halfLifeSeconds = std::stod(*h);
    } catch (const std::exception&) {
      return error(400, "halfLife is not a number");
    }
  }
  auto view = store_.read();
  Recommenders rec(*view, vocab_, registry_);
  RankedList list = rec.news(req);
  return respond({{"concept", req.conceptIri},
                  {"now", formatTimestamp(req.now)},
                  {"results", rankedJson(list)}});
}

ApiResponse Api::grammars() {
  json list = json::array();
  for (const auto& name : registry_.names()) {
    json entry = {{"name", name}};
    try {
      Grammar g = registry_.load(name);
      entry["description"] = g.description;
      entry["experimental"] = g.experimental;
    } catch (const GrammarError& e) {
      entry["error"] = e.what();
    }
    list.push_back(entry);
  }
  return respond({{"grammars", list}});
}

}  // namespace reef
