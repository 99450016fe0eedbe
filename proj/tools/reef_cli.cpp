// reef: command-line front end over a store persisted in $REEF_DATA_DIR.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "reef/analytics.hpp"
#include "reef/dublin_core.hpp"
#include "reef/namespaces.hpp"
#include "reef/nquads.hpp"
#include "reef/recommenders.hpp"
#include "reef/service.hpp"
#include "reef/translate.hpp"

namespace fs = std::filesystem;
using namespace reef;

namespace {

fs::path dataDir() {
  const char* env = std::getenv("REEF_DATA_DIR");
  return fs::path(env && *env ? env : "reef-data");
}

QuadStore openStore() {
  fs::create_directories(dataDir());
  QuadStore store;
  store.attachLog(dataDir() / "store.log");
  return store;
}

std::string readFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string expandOrThrow(const std::string& s) {
  auto iri = ns::expand(s);
  if (!iri) throw std::invalid_argument("not an IRI: " + s);
  return *iri;
}

HttpServer* activeServer = nullptr;

void onSignal(int) {
  if (activeServer) activeServer->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scholarly recommendation engine over a quad store"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string graph;
  auto* ingestCmd = app.add_subcommand("ingest", "Load OAI-PMH XML or N-Quads files");
  ingestCmd->add_option("files", files, "Input files (.xml, .nq)")->required();
  ingestCmd->add_option("--graph", graph, "Provider graph IRI for XML records");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serveCmd = app.add_subcommand("serve", "Run the HTTP JSON API");
  serveCmd->add_option("--port", port, "Port (0 picks a free one)");
  serveCmd->add_option("--host", host, "Interface to bind");

  std::string grammarName;
  std::vector<std::string> seeds;
  std::vector<std::string> paramArgs;
  std::string mode = "diffusion";
  WalkerConfig cfg;
  auto* recommendCmd = app.add_subcommand("recommend", "Run a named grammar");
  recommendCmd->add_option("grammar", grammarName, "Grammar name")->required();
  recommendCmd->add_option("--seed", seeds, "Seed resource IRI (repeatable)");
  recommendCmd->add_option("--param", paramArgs, "Grammar parameter key=value");
  recommendCmd->add_option("--mode", mode, "diffusion or montecarlo")
      ->check(CLI::IsMember({"diffusion", "montecarlo"}));
  recommendCmd->add_option("--walkers", cfg.walkersPerSeed, "Walkers per seed");
  recommendCmd->add_option("--decay", cfg.decay, "Per-step decay");
  recommendCmd->add_option("--threshold", cfg.energyThreshold, "Energy threshold");
  recommendCmd->add_option("--max-steps", cfg.maxSteps, "Hop budget");
  recommendCmd->add_option("--rng-seed", cfg.rngSeed, "Monte Carlo RNG seed");

  std::string metric, resource, other;
  int year = 0;
  auto* statsCmd = app.add_subcommand("stats", "Print a metric as JSON");
  statsCmd->add_option("metric", metric,
                       "h_index | citation_count | co_usage | impact_factor")
      ->required();
  statsCmd->add_option("iri", resource, "Resource IRI")->required();
  statsCmd->add_option("--other", other, "Second resource for co_usage");
  statsCmd->add_option("--year", year, "Year for impact_factor");

  std::string outPath;
  auto* exportCmd = app.add_subcommand("export", "Write the store as N-Quads");
  exportCmd->add_option("--out", outPath, "Output file ('-' for stdout)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingestCmd->parsed()) {
      QuadStore store = openStore();
      for (const auto& f : files) {
        const std::string text = readFile(f);
        const auto ext = fs::path(f).extension().string();
        if (ext == ".nq" || ext == ".nquads") {
          const std::size_t before = store.size();
          const std::size_t n = loadNQuads(store, text);
          std::cout << f << ": " << n << " statements, "
                    << (store.size() - before) << " quads added\n";
          continue;
        }
        if (graph.empty()) {
          throw std::invalid_argument("--graph is required for XML input");
        }
        HarvestResult harvest = parseOaiPmh(text);
        for (const auto& w : harvest.warnings) std::cerr << f << ": " << w << '\n';
        IngestStats stats =
            ingest(store, harvest.records, Term::iri(expandOrThrow(graph)));
        std::cout << f << ": " << stats.records << " records, "
                  << stats.quadsAdded << " quads added, " << stats.resourcesAdded
                  << " new resources\n";
      }
      return 0;
    }
    if (serveCmd->parsed()) {
      SharedStore store(openStore());
      Api api(store, Vocabulary::builtin(), GrammarRegistry::fromEnvironment());
      HttpServer server(api);
      int bound = server.bind(host, port);
      if (bound < 0) {
        std::cerr << "cannot bind " << host << ":" << port << '\n';
        return 1;
      }
      activeServer = &server;
      std::signal(SIGINT, onSignal);
      std::signal(SIGTERM, onSignal);
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      server.listen();
      return 0;
    }
    if (recommendCmd->parsed()) {
      QuadStore store = openStore();
      cfg.mode = mode == "montecarlo" ? WalkMode::MonteCarlo : WalkMode::Diffusion;
      GrammarParams params;
      for (const auto& p : paramArgs) {
        auto eq = p.find('=');
        if (eq == std::string::npos) {
          throw std::invalid_argument("--param expects key=value: " + p);
        }
        params[p.substr(0, eq)] = p.substr(eq + 1);
      }
      std::vector<std::string> iris;
      for (const auto& s : seeds) iris.push_back(expandOrThrow(s));
      Recommenders rec(store, Vocabulary::builtin(),
                       GrammarRegistry::fromEnvironment());
      std::cout << rec.recommend(grammarName, iris, params, cfg).toText();
      return 0;
    }
    if (statsCmd->parsed()) {
      QuadStore store = openStore();
      std::optional<std::string> second;
      if (!other.empty()) second = expandOrThrow(other);
      std::optional<int> y;
      if (statsCmd->count("--year") > 0) y = year;
      std::cout << computeMetric(store, parseMetric(metric),
                                 expandOrThrow(resource), second, y)
                       .toJson()
                << '\n';
      return 0;
    }
    if (exportCmd->parsed()) {
      QuadStore store = openStore();
      const std::string text = exportNQuads(store);
      if (outPath == "-") {
        std::cout << text;
      } else {
        std::ofstream out(outPath, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + outPath);
        out << text;
      }
      std::cerr << store.size() << " quads exported\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
