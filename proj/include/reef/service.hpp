#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "reef/grammar.hpp"
#include "reef/shared_store.hpp"
#include "reef/time.hpp"
#include "reef/vocabulary.hpp"

namespace reef {

// Header (or query parameter) carrying the opaque session id.
inline constexpr const char* kSessionHeader = "X-Reef-Session";
// Header (or query parameter "user") naming the session's user IRI. There is
// no real authentication: whoever names a user acts as that user.
inline constexpr const char* kUserHeader = "X-Reef-User";
// Fan-out cap per predicate group in resource views.
inline constexpr std::size_t kViewFanOut = 100;

struct ApiRequest {
  std::string method;  // "GET" / "POST"
  std::string path;    // decoded, without query string
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // names as sent
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON, always carrying "v":1
};

struct Session {
  std::string sessionId;
  std::string user;
  std::optional<std::string> lastViewed;
};

// The JSON API, independent of any HTTP library.
//
// GET  /resource/{iri} | /resource?id=   resource view, records usage
// GET  /search?q=                        keyword search over title/abstract
// POST /discover                         {seeds, returnTypes, cfg}
// POST /reasoner                         {name, params, seeds, cfg}
// POST /tag                              {concept, resource, weight, at?}
// GET  /organize                         the user's concept folders
// GET  /news?concept=&now=&halfLife=     news feed for one concept
// GET  /grammars                         shipped grammar names
class Api {
 public:
  using Clock = std::function<Timestamp()>;

  Api(SharedStore& store, const Vocabulary& vocab, GrammarRegistry registry,
      Clock clock = &reef::now);

  ApiResponse handle(const ApiRequest& request);

  std::optional<Session> session(const std::string& id) const;

 private:
  struct Caller {
    std::optional<std::string> sessionId;
    std::optional<std::string> user;
  };

  Caller identify(const ApiRequest& request);
  ApiResponse view(const ApiRequest& request, const std::string& id);
  ApiResponse search(const ApiRequest& request);
  ApiResponse discover(const ApiRequest& request);
  ApiResponse reasoner(const ApiRequest& request);
  ApiResponse tagResource(const ApiRequest& request);
  ApiResponse organize(const ApiRequest& request);
  ApiResponse news(const ApiRequest& request);
  ApiResponse grammars();

  SharedStore& store_;
  const Vocabulary& vocab_;
  GrammarRegistry registry_;
  Clock clock_;
  mutable std::mutex sessionsMutex_;
  std::map<std::string, Session> sessions_;
};

// Serves an Api over HTTP/1.1.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port (port 0 picks a free port) and returns the bound port,
  // or -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reef
