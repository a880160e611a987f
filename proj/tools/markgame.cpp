// markgame: generation, matches, solving, validation and the play service from one binary.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "markgame/catalog.hpp"
#include "markgame/graph_io.hpp"
#include "markgame/http_server.hpp"
#include "markgame/lattice.hpp"
#include "markgame/match.hpp"
#include "markgame/session.hpp"
#include "markgame/solver.hpp"
#include "markgame/strategy.hpp"

using namespace markgame;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  GraphDocument doc;
  std::string source;
  std::optional<LatticeBundle> bundle;  // regenerated from meta when it matches
};

// "-" or empty reads stdin; K3/C4/P5/S3 name built-in graphs when no such file exists
Input load_graph(const std::string& where) {
  Input in;
  in.source = where.empty() ? "-" : where;
  static const std::regex named(R"([KCPS]\d+)");
  try {
    if (in.source == "-") {
      in.doc = read_graph_document(std::cin);
    } else if (!std::filesystem::exists(in.source) && std::regex_match(in.source, named)) {
      in.doc.graph = std::make_shared<const PlanarGraph>(named_graph(in.source));
      in.doc.meta = {{"named", in.source}};
    } else {
      std::ifstream f(in.source);
      if (!f) throw UsageError("cannot open " + in.source);
      in.doc = read_graph_document(f);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidInput("reading graph from " + in.source + ": " + e.what());
  }

  // generated documents carry their parameters; rebuilding the bundle recovers the core for alice:extension
  const json& m = in.doc.meta;
  if (m.contains("family") && m["family"].is_string()) {
    try {
      auto b = generate(m["family"].get<std::string>(), m.value("rows", 1), m.value("cols", 1), m.value("seed", 0ULL),
                        m.value("base", std::string("T")), m.value("insertions", -1));
      if (graph_to_json(*b.graph)["edges"] == graph_to_json(*in.doc.graph)["edges"]) in.bundle = std::move(b);
    } catch (const std::exception&) {
    }
  }
  return in;
}

StrategyContext context_of(const Input& in, std::uint64_t seed) {
  if (in.bundle) {
    auto ctx = context_for(*in.bundle, seed);
    ctx.graph = in.doc.graph;
    ctx.scheme = in.doc.scheme;
    return ctx;
  }
  StrategyContext ctx;
  ctx.graph = in.doc.graph;
  ctx.scheme = in.doc.scheme;
  ctx.default_seed = seed;
  return ctx;
}

std::unique_ptr<Strategy> strategy(const std::string& descriptor, Side side, const StrategyContext& ctx) {
  std::unique_ptr<Strategy> s;
  try {
    s = make_strategy(descriptor, ctx);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (s->side() != side) throw UsageError(descriptor + " does not play " + std::string(to_string(side)));
  return s;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text << '\n';
}

void emit(const std::string& out_path, const json& j) { emit(out_path, j.dump(2)); }

// wall-clock time would break byte-for-byte reproducibility, so it is opt-in
void drop_seconds(json& j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items()) drop_seconds(v);
  } else if (j.is_array()) {
    for (auto& v : j) drop_seconds(v);
  }
}

std::uint64_t node_budget(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MARKGAME_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("MARKGAME_BUDGET is not a number: ") + env);
    }
  }
  return SolverOptions{}.node_budget;
}

int run(int argc, char** argv) {
  CLI::App app{"Vertex-edge marking game toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--out", out, "Output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a lattice window or Apollonian network");
  std::string family;
  int rows = 2, cols = 2, insertions = -1;
  std::uint64_t seed = 0;
  std::string base = "T";
  gen->add_option("family", family, "T, R, C, H, Tp, D or apollonian")->required();
  gen->add_option("--rows", rows);
  gen->add_option("--cols", cols);
  gen->add_option("--seed", seed);
  gen->add_option("--base", base, "Base family for D");
  gen->add_option("--insertions", insertions, "Apollonian insertions");

  // graph-consuming subcommands share --graph
  std::string graph_path;
  auto graph_opt = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", graph_path, "Graph JSON file, built-in name (K3, C4, P5, S3) or - for stdin");
  };

  auto* play = app.add_subcommand("play", "Play one match");
  graph_opt(play);
  std::string alice_d = "alice:angle", bob_d = "bob:random";
  int round_cap = kNoRoundCap;
  play->add_option("--alice", alice_d);
  play->add_option("--bob", bob_d);
  play->add_option("--seed", seed);
  play->add_option("--rounds", round_cap, "Round cap");

  auto* solve = app.add_subcommand("solve", "Solve the game exactly");
  graph_opt(solve);
  std::optional<std::uint64_t> budget;
  int threads = 1;
  bool timing = false;
  solve->add_option("--budget", budget, "Node cap (MARKGAME_BUDGET when absent)");
  solve->add_option("--threads", threads);
  solve->add_flag("--timing", timing, "Include wall-clock seconds");

  auto* verify = app.add_subcommand("verify", "Check the five marking-scheme conditions");
  graph_opt(verify);

  auto* bounds = app.add_subcommand("bounds", "Bracket the game value");
  graph_opt(bounds);
  std::vector<std::string> sub_paths;
  std::string match_mode = "id";
  bounds->add_option("--sub", sub_paths, "Subgraph JSON files whose solved values give lower bounds");
  bounds->add_option("--match", match_mode, "Subgraph embedding by id or coords")->check(CLI::IsMember({"id", "coords"}));
  bounds->add_option("--budget", budget);

  auto* exp = app.add_subcommand("export", "Export a graph");
  graph_opt(exp);
  std::string format = "dot";
  exp->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

  auto* tourney = app.add_subcommand("tourney", "Many matches over consecutive seeds");
  graph_opt(tourney);
  int games = 100;
  tourney->add_option("--alice", alice_d);
  tourney->add_option("--bob", bob_d);
  tourney->add_option("--games", games)->check(CLI::PositiveNumber);
  tourney->add_option("--seed", seed, "First seed");
  tourney->add_option("--rounds", round_cap);
  int workers_flag = 0;
  tourney->add_option("--threads", workers_flag, "Worker threads (0 = hardware)");

  auto* serve = app.add_subcommand("serve", "Run the play service");
  std::string host = "127.0.0.1", cors = "*";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--cors", cors, "Allowed origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  json config{{"subcommand", app.get_subcommands().front()->get_name()}};

  if (*gen) {
    config.update({{"family", family}, {"rows", rows}, {"cols", cols}, {"seed", seed}, {"base", base},
                   {"insertions", insertions}});
    if (!parse_family(family)) throw UsageError("unknown family " + family);
    LatticeBundle b;
    try {
      b = generate(family, rows, cols, seed, base, insertions);
    } catch (const LatticeError& e) {
      throw InvalidInput(e.what());
    }
    json meta = b.meta();
    meta["config"] = config;
    emit(out, graph_to_json(*b.graph, b.scheme ? &*b.scheme : nullptr, meta));
    return 0;
  }

  if (*serve) {
    SessionManager sessions;
    HttpServer server(sessions, cors);
    const int bound = server.bind(host, port);
    if (bound < 0) throw UsageError("cannot bind " + host + ":" + std::to_string(port));
    std::cerr << json{{"config", {{"subcommand", "serve"}, {"host", host}, {"port", bound}, {"cors", cors}}}}.dump()
              << std::endl;
    return server.listen() ? 0 : kExitInvalid;
  }

  const Input in = load_graph(graph_path);
  const PlanarGraph& g = *in.doc.graph;
  config["graph"] = in.source;
  if (!in.doc.meta.empty()) config["graph_meta"] = in.doc.meta;

  if (*verify) {
    if (!in.doc.scheme) throw InvalidInput("graph carries no marking scheme");
    const auto report = validate_theorem_conditions(g, *in.doc.scheme);
    json checks = json::array();
    auto ids = [&](const auto& idx, auto id_of) {
      json a = json::array();
      for (auto i : idx) a.push_back(id_of(i));
      return a;
    };
    for (const auto& c : report.checks) {
      checks.push_back({{"condition", to_string(c.which)},
                        {"passed", c.passed},
                        {"faces", ids(c.faces, [&](FaceIndex f) { return g.face(f).id; })},
                        {"edges", ids(c.edges, [&](EdgeIndex e) { return json{g.vertex(g.edge(e).u).id, g.vertex(g.edge(e).v).id}; })},
                        {"vertices", ids(c.vertices, [&](VertexIndex v) { return g.vertex(v).id; })}});
    }
    emit(out, json{{"config", config}, {"passed", report.passed()}, {"checks", checks}});
    return report.passed() ? 0 : kExitInvalid;
  }

  if (*exp) {
    config["format"] = format;
    if (format == "json") {
      json meta = in.doc.meta;
      meta["config"] = config;
      emit(out, graph_to_json(g, in.doc.scheme ? &*in.doc.scheme : nullptr, meta));
    } else {
      emit(out, "// " + config.dump() + "\n" + to_dot(g, in.doc.scheme ? &*in.doc.scheme : nullptr));
    }
    return 0;
  }

  if (*solve) {
    SolverOptions opt;
    opt.node_budget = node_budget(budget);
    opt.threads = std::max(1, threads);
    config.update({{"budget", opt.node_budget}, {"threads", opt.threads}});
    SolveResult res;
    try {
      res = solve_colve(g, opt);
    } catch (const SolverError& e) {
      throw InvalidInput(e.what());
    }
    json j = to_json(g, res);
    if (!timing) drop_seconds(j);
    j["config"] = config;
    emit(out, j);
    return res.value ? 0 : kExitBudget;
  }

  if (*bounds) {
    SolverOptions opt;
    opt.node_budget = node_budget(budget);
    config.update({{"budget", opt.node_budget}, {"subgraphs", sub_paths}, {"match", match_mode}});
    std::vector<Input> subs;
    for (const auto& p : sub_paths) subs.push_back(load_graph(p));
    std::vector<const PlanarGraph*> ptrs;
    for (const auto& s : subs) ptrs.push_back(s.doc.graph.get());
    BoundsReport r;
    try {
      r = bounds_report(g, ptrs, match_mode == "id" ? SubgraphMatch::ById : SubgraphMatch::ByCoordinates, opt);
    } catch (const SolverError& e) {
      throw InvalidInput(e.what());
    }
    json j = to_json(r);
    j["config"] = config;
    emit(out, j);
    if (!r.consistent) return kExitInvalid;
    for (const auto& s : r.subgraphs)
      if (!s.value) return kExitBudget;
    return 0;
  }

  if (*play) {
    config.update({{"alice", alice_d}, {"bob", bob_d}, {"seed", seed}});
    if (round_cap != kNoRoundCap) config["rounds"] = round_cap;
    const auto ctx = context_of(in, seed);
    auto alice = strategy(alice_d, Side::Alice, ctx);
    auto bob = strategy(bob_d, Side::Bob, ctx);
    MatchResult r;
    try {
      r = play_match(in.doc.graph, *alice, *bob, round_cap);
    } catch (const StrategyError& e) {
      throw InvalidInput(e.what());
    } catch (const MatchAborted& e) {
      throw InvalidInput(e.what());
    }
    emit(out, transcript_to_json(g, r, in.source, config));
    std::cerr << alice->descriptor() << " vs " << bob->descriptor() << ": final score " << r.final_score;
    if (r.witness) std::cerr << " at vertex " << g.vertex(*r.witness).id << " in round " << r.witness_round;
    std::cerr << " after " << r.rounds() << " rounds (" << to_string(r.termination) << ")\n";
    return 0;
  }

  if (*tourney) {
    const int workers = workers_flag > 0 ? workers_flag : std::max(1u, std::thread::hardware_concurrency());
    config.update({{"alice", alice_d}, {"bob", bob_d}, {"games", games}, {"seed", seed}});
    if (round_cap != kNoRoundCap) config["rounds"] = round_cap;
    // fail on bad descriptors before spawning anything
    strategy(alice_d, Side::Alice, context_of(in, seed));
    strategy(bob_d, Side::Bob, context_of(in, seed));

    std::vector<int> finals(games, -1);
    std::vector<std::string> errors(games);
    std::atomic<int> next{0};
    auto work = [&] {
      for (int i = next++; i < games; i = next++) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        try {
          const auto ctx = context_of(in, s);
          auto alice = make_strategy(alice_d, ctx);
          auto bob = make_strategy(bob_d, ctx);
          finals[i] = play_match(in.doc.graph, *alice, *bob, round_cap).final_score;
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(workers, games); ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::map<int, int> hist;
    json failed = json::array();
    int worst = -1;
    std::uint64_t worst_seed = seed;
    double sum = 0;
    for (int i = 0; i < games; ++i) {
      if (!errors[i].empty()) {
        failed.push_back({{"seed", seed + i}, {"error", errors[i]}});
        continue;
      }
      ++hist[finals[i]];
      sum += finals[i];
      if (finals[i] > worst) worst = finals[i], worst_seed = seed + i;
    }
    json h = json::object();
    for (auto [score, count] : hist) h[std::to_string(score)] = count;
    const int played = games - static_cast<int>(failed.size());
    emit(out, json{{"config", config},
                   {"games", played},
                   {"max", worst < 0 ? json(nullptr) : json(worst)},
                   {"max_seed", worst < 0 ? json(nullptr) : json(worst_seed)},
                   {"mean", played ? sum / played : 0.0},
                   {"histogram", h},
                   {"failures", failed}});
    return failed.empty() ? 0 : kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "markgame: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "markgame: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "markgame: " << e.what() << '\n';
    return kExitInvalid;
  }
}
