#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "reef/namespaces.hpp"
#include "reef/relations.hpp"
#include "reef/service.hpp"

using namespace reef;
using fixtures::krs;
using json = nlohmann::json;

namespace {

const Timestamp kClock = parseTimestamp("2008-10-10T00:00:00Z");

QuadStore serviceStore() {
  QuadStore s = fixtures::newsExampleStore();
  const Term g = Term::iri(krs("provider"));
  s.insert({Term::iri(krs("article1")), Term::iri(ns::core("abstract")),
            Term::literal("Walkers over multi-relational graphs."), g});
  s.insert({Term::iri(krs("apepe")), Term::iri(ns::core("created")),
            Term::iri(krs("article1")), g});
  return s;
}

class ApiTest : public ::testing::Test {
 protected:
  SharedStore store{serviceStore()};
  Api api{store, Vocabulary::builtin(), GrammarRegistry::fromEnvironment(),
          [] { return kClock; }};

  ApiResponse get(const std::string& path,
                  std::map<std::string, std::string> query = {},
                  const std::string& session = "s1",
                  const std::string& user = "http://reef.example.org/krs/marko") {
    ApiRequest r{"GET", path, std::move(query), {}, {}};
    if (!session.empty()) r.headers[kSessionHeader] = session;
    if (!user.empty()) r.headers[kUserHeader] = user;
    return api.handle(r);
  }

  ApiResponse post(const std::string& path, const json& body,
                   const std::string& session = "s1",
                   const std::string& user = "http://reef.example.org/krs/marko") {
    ApiRequest r{"POST", path, {}, {}, body.dump()};
    if (!session.empty()) r.headers[kSessionHeader] = session;
    if (!user.empty()) r.headers[kUserHeader] = user;
    return api.handle(r);
  }

  std::size_t usageCount() { return usageRecords(*store.read()).size(); }
};

std::vector<std::string> resourcesOf(const ApiResponse& r) {
  std::vector<std::string> out;
  const json body = json::parse(r.body);
  for (const auto& e : body.at("results")) {
    out.push_back(e.at("resource").get<std::string>());
  }
  return out;
}

}  // namespace

TEST_F(ApiTest, ViewShowsTypesAbbreviationAndEdges) {
  auto r = get("/resource/" + krs("apepe"));
  ASSERT_EQ(r.status, 200) << r.body;
  auto j = json::parse(r.body);
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["abbrev"], "Pe");
  EXPECT_EQ(j["title"], "apepe");
  EXPECT_EQ(j["types"], json::array({ns::core("Person")}));
  EXPECT_EQ(j["outgoing"][ns::core("created")]["total"], 1);
  EXPECT_EQ(j["outgoing"][ns::core("created")]["values"][0]["value"], krs("article1"));
  ASSERT_EQ(j["tags"].size(), 1u);
  EXPECT_EQ(j["tags"][0]["tagger"], krs("josh"));
}

TEST_F(ApiTest, ViewAcceptsCuriesAndQueryIds) {
  auto r = get("/resource", {{"id", krs("article1")}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body)["abbrev"], "Ar");
}

TEST_F(ApiTest, UnknownResourceIs404) {
  EXPECT_EQ(get("/resource/" + krs("nobody")).status, 404);
  EXPECT_EQ(get("/resource/not-an-iri").status, 400);
}

TEST_F(ApiTest, ConsecutiveViewsRecordUsage) {
  get("/resource/" + krs("apepe"));
  EXPECT_EQ(usageCount(), 0u);
  get("/resource/" + krs("article1"));
  auto records = usageRecords(*store.read());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].owner.value(), krs("marko"));
  EXPECT_EQ(records[0].subject.value(), krs("apepe"));
  EXPECT_EQ(records[0].object.value(), krs("article1"));
  EXPECT_EQ(records[0].stamps, std::vector<Timestamp>{kClock});
  // Reloading the same resource is not a transition.
  get("/resource/" + krs("article1"));
  EXPECT_EQ(usageRecords(*store.read())[0].stamps.size(), 1u);
}

TEST_F(ApiTest, SessionsAreIsolated) {
  get("/resource/" + krs("apepe"), {}, "s1", krs("marko"));
  get("/resource/" + krs("dave"), {}, "s2", krs("josh"));
  get("/resource/" + krs("article1"), {}, "s2", krs("josh"));
  auto records = usageRecords(*store.read());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].subject.value(), krs("dave"));
  EXPECT_EQ(records[0].owner.value(), krs("josh"));
  EXPECT_EQ(get("/resource/" + krs("apepe"), {}, "s1", krs("josh")).status, 401);
  ASSERT_TRUE(api.session("s2"));
  EXPECT_EQ(api.session("s2")->lastViewed, krs("article1"));
}

TEST_F(ApiTest, AnonymousViewsRecordNothing) {
  get("/resource/" + krs("apepe"), {}, "", "");
  get("/resource/" + krs("article1"), {}, "", "");
  EXPECT_EQ(usageCount(), 0u);
}

TEST_F(ApiTest, SearchMatchesTitlesAndAbstracts) {
  auto r = get("/search", {{"q", "Semantic"}});
  ASSERT_EQ(r.status, 200);
  auto hits = resourcesOf(r);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits[0], krs("semanticweb"));
  auto abstractOnly = resourcesOf(get("/search", {{"q", "walkers"}}));
  EXPECT_EQ(abstractOnly, std::vector<std::string>{krs("article1")});
  EXPECT_TRUE(resourcesOf(get("/search", {{"q", "zzzz"}})).empty());
  EXPECT_EQ(get("/search", {{"q", "  "}}).status, 400);
}

TEST_F(ApiTest, TagThenOrganize) {
  auto r = post("/tag", {{"concept", "graphs"},
                         {"resource", krs("article1")},
                         {"weight", 0.5}});
  ASSERT_EQ(r.status, 200) << r.body;
  auto folders = json::parse(get("/organize").body)["folders"];
  bool found = false;
  for (const auto& f : folders) {
    if (f["title"] == "graphs") {
      found = true;
      ASSERT_EQ(f["resources"].size(), 1u);
      EXPECT_EQ(f["resources"][0]["resource"], krs("article1"));
      EXPECT_EQ(f["resources"][0]["weight"], 0.5);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(post("/tag", {{"concept", krs("semanticweb")},
                          {"resource", krs("nobody")}})
                .status,
            404);
  EXPECT_EQ(post("/tag", {{"concept", krs("semanticweb")},
                          {"resource", krs("apepe")},
                          {"weight", 3.0}})
                .status,
            400);
  EXPECT_EQ(post("/tag", {{"concept", "x"}, {"resource", krs("apepe")}}, "s9", "")
                .status,
            401);
}

TEST_F(ApiTest, NewsReproducesWorkedExample) {
  auto r = get("/news", {{"concept", krs("semanticweb")},
                         {"now", "2008-10-10T00:00:00Z"}});
  ASSERT_EQ(r.status, 200) << r.body;
  auto got = resourcesOf(r);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{krs("apepe"), krs("article1")}));
}

TEST_F(ApiTest, TaggingANewUserChangesTheFeed) {
  post("/tag", {{"concept", krs("semanticweb")},
                {"resource", krs("gary")},
                {"at", "2008-10-07T00:00:00Z"}});
  auto got = resourcesOf(get("/news", {{"concept", krs("semanticweb")}}));
  EXPECT_NE(std::find(got.begin(), got.end(), krs("software1")), got.end());
  EXPECT_EQ(std::find(got.begin(), got.end(), krs("gary")), got.end());
}

TEST_F(ApiTest, ReasonerRunsNamedGrammars) {
  auto r = post("/reasoner", {{"name", "coauthorship"},
                              {"seeds", {krs("apepe")}}});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_TRUE(resourcesOf(r).empty());
  auto news = post("/reasoner", {{"name", "news"},
                                 {"params", {{"concept", krs("semanticweb")},
                                             {"now", "2008-10-10T00:00:00Z"}}}});
  ASSERT_EQ(news.status, 200) << news.body;
  EXPECT_EQ(resourcesOf(news).size(), 2u);
  EXPECT_EQ(post("/reasoner", {{"name", "nope"}, {"seeds", {krs("apepe")}}}).status,
            422);
  EXPECT_EQ(post("/reasoner", {{"name", "coauthorship"},
                               {"seeds", {krs("ghost")}}})
                .status,
            404);
  EXPECT_EQ(post("/reasoner", {{"name", "coauthorship"},
                               {"seeds", {krs("apepe")}},
                               {"cfg", {{"decay", 7}}}})
                .status,
            400);
}

TEST_F(ApiTest, DiscoverEndpoint) {
  auto r = post("/discover", {{"seeds", {krs("article1")}},
                              {"returnTypes", {"core:Person"}}});
  ASSERT_EQ(r.status, 200) << r.body;
  auto got = resourcesOf(r);
  EXPECT_NE(std::find(got.begin(), got.end(), krs("apepe")), got.end());
  EXPECT_EQ(post("/discover", {{"seeds", json::array()}}).status, 400);
  EXPECT_EQ(post("/discover", {{"seeds", {krs("article1")}},
                               {"returnTypes", {"core:Spaceship"}}})
                .status,
            400);
}

TEST_F(ApiTest, RoutingErrors) {
  EXPECT_EQ(get("/nowhere").status, 404);
  EXPECT_EQ(post("/search", json::object()).status, 405);
  EXPECT_EQ(get("/discover").status, 405);
  ApiRequest bad{"POST", "/discover", {}, {}, "{not json"};
  EXPECT_EQ(api.handle(bad).status, 400);
  auto r = get("/grammars");
  ASSERT_EQ(r.status, 200);
  EXPECT_GE(json::parse(r.body)["grammars"].size(), 5u);
  EXPECT_EQ(json::parse(get("/nowhere").body)["v"], 1);
}

TEST_F(ApiTest, RepeatedRequestsAreByteIdentical) {
  auto a = get("/news", {{"concept", krs("semanticweb")}});
  auto b = get("/news", {{"concept", krs("semanticweb")}});
  EXPECT_EQ(a.body, b.body);
  json body = {{"seeds", {krs("article1")}}};
  EXPECT_EQ(post("/discover", body).body, post("/discover", body).body);
}

TEST(HttpServerTest, ServesTheApiOverLoopback) {
  SharedStore store{fixtures::newsExampleStore()};
  Api api(store, Vocabulary::builtin(), GrammarRegistry::fromEnvironment(),
          [] { return kClock; });
  HttpServer server(api);
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  httplib::Headers headers{{kSessionHeader, "h1"}, {kUserHeader, krs("marko")}};
  auto res = client.Get(
      "/news?concept=http%3A%2F%2Freef.example.org%2Fkrs%2Fsemanticweb", headers);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["results"].size(), 2u);
  auto missing = client.Get("/nowhere");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto posted = client.Post("/reasoner", headers,
                            R"({"name":"coauthorship","seeds":["nothing"]})",
                            "application/json");
  ASSERT_TRUE(posted);
  EXPECT_EQ(posted->status, 400);
  server.stop();
  t.join();
}
