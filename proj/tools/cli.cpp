#include "cli.hpp"

#include "xregex/xregex.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace xregex::cli {

namespace {

using nlohmann::json;

constexpr int kMatched = 0;
constexpr int kNoMatch = 1;
constexpr int kError = 2;

struct RunConfig {
  std::string pattern;
  std::string text;
  std::string file;
  std::string algo = "clustered";
  std::string space = "heavy-path";
  std::string simulator = "thompson";
  std::string alphabet;
  bool substrings = false;
  bool search = false;
  std::string stats;
  std::string dump;
  std::string format = "text";

  CLI::Option* text_opt = nullptr;
  CLI::Option* file_opt = nullptr;
  CLI::Option* alphabet_opt = nullptr;
};

struct BenchConfig {
  std::uint64_t seed = 1;
  std::string n = "64";
  std::string m = "40";
  std::string k = "1";
  std::size_t instances = 5;
  std::size_t runs = 5;
  std::string symbols = "abc";
  std::string format = "text";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> read_records(const RunConfig& cfg) {
  if (cfg.file_opt->count() == 0) return {cfg.text};
  std::ifstream in(cfg.file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + cfg.file + "'");
  std::vector<std::string> records;
  for (std::string line; std::getline(in, line);) records.push_back(line);
  if (in.bad()) throw std::runtime_error("read error on '" + cfg.file + "'");
  return records;
}

void check_alphabet(const RunConfig& cfg, const Ast& ast, const std::vector<std::string>& records) {
  if (cfg.alphabet_opt == nullptr || cfg.alphabet_opt->count() == 0) return;
  const Alphabet sigma(cfg.alphabet);
  Alphabet leaves;
  leaves.add_leaves(ast);
  if (!sigma.covers(leaves.symbols()))
    throw UsageError("--alphabet does not cover the pattern's symbols '" + leaves.symbols() + "'");
  for (std::size_t r = 0; r < records.size(); ++r)
    if (!sigma.covers(records[r]))
      throw UsageError("--alphabet does not cover record " + std::to_string(r + 1));
}

json spans_json(const MatchGraph& g) {
  json spans = json::array();
  for (auto [i, j] : g.edges()) spans.push_back({i + 1, j});
  return spans;
}

json stats_json(const EngineStats& stats) {
  json clusters = json::array();
  for (const ClusterTiming& t : stats.clusters)
    clusters.push_back({{"id", t.id}, {"m_C", t.m_c}, {"time_ns", t.time_ns}});
  return {{"ell", stats.cluster_count},
          {"peak_live_graphs", stats.peak_live_graphs},
          {"graph_operations", stats.graph_operations},
          {"mode", mode_name(stats.mode)},
          {"clusters", std::move(clusters)},
          {"simulator",
           {{"runs", stats.simulator.runs},
            {"char_steps", stats.simulator.char_steps},
            {"state_visits", stats.simulator.state_visits}}}};
}

struct Evaluated {
  MatchGraph root;
  json stats;
};

// Evaluates one record with the configured engine. `dumps` collects per-node
// or per-cluster graphs when requested.
Evaluated evaluate(const RunConfig& cfg, const ClusteredPattern& pattern, const TnfaSimulator& sim,
                   const std::string& record, json* dumps) {
  const Ast& ast = pattern.ast();
  Evaluated result;
  if (cfg.algo == "dp") {
    DpStats dp;
    if (dumps) {
      dp_all_graphs(ast, record, [&](NodeId v, const MatchGraph& g) {
        dumps->push_back({{"node", v}, {"expression", render(ast, v)}, {"edges", g.edges()}});
      });
    }
    result.root = dp_node_graph(ast, ast.root(), record, &dp);
    result.stats = {{"algo", "dp"},
                    {"m", ast.size()},
                    {"peak_live_graphs", dp.peak_live_graphs}};
    return result;
  }
  ClusterObserver observe;
  if (dumps) {
    observe = [&](ClusterId c, const MatchGraph& g) {
      const NodeId root = pattern.partition().at(c).root;
      dumps->push_back({{"cluster", c},
                        {"node", root},
                        {"expression", render(ast, root)},
                        {"edges", g.edges()}});
    };
  }
  MatchResult match = match_clustered(pattern, record, sim, parse_mode(cfg.space), observe);
  result.root = std::move(match.root_graph);
  result.stats = stats_json(match.stats);
  result.stats["algo"] = "clustered";
  return result;
}

void print_dumps(const json& dumps, std::ostream& out) {
  for (const json& d : dumps) {
    std::ostringstream heading;
    if (d.contains("cluster")) heading << "cluster " << d["cluster"].get<ClusterId>() << ' ';
    heading << "node " << d["node"].get<NodeId>() << ' ' << d["expression"].get<std::string>();
    out << "# " << heading.str() << '\n';
    for (const auto& e : d["edges"]) out << e[0].get<std::size_t>() << ' ' << e[1].get<std::size_t>() << '\n';
  }
}

int cmd_match(const RunConfig& cfg, std::ostream& out) {
  if (cfg.text_opt->count() + cfg.file_opt->count() != 1)
    throw UsageError("give exactly one input: a literal string or --file");
  if (!cfg.dump.empty() && cfg.dump != "graphs")
    throw UsageError("match only dumps graphs; use `inspect` for --dump " + cfg.dump);

  ClusteredPattern pattern(parse(cfg.pattern));
  const auto records = read_records(cfg);
  check_alphabet(cfg, pattern.ast(), records);
  const auto sim = make_simulator(cfg.simulator);
  const bool numbered = cfg.file_opt->count() != 0;
  const bool as_json = cfg.format == "json" || cfg.stats == "json";

  bool any = false;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const std::string& record = records[r];
    json dumps = json::array();
    const auto began = std::chrono::steady_clock::now();
    Evaluated ev = evaluate(cfg, pattern, *sim, record, cfg.dump == "graphs" ? &dumps : nullptr);
    const auto elapsed = std::chrono::steady_clock::now() - began;
    ev.stats["time_ns"] = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count();
    ev.stats["n"] = record.size();
    ev.stats["m"] = pattern.ast().size();
    ev.stats["k"] = count_extended(pattern.ast());
    const bool verdict =
        cfg.search ? ev.root.edge_count() > 0 : ev.root.has_edge(0, record.size());
    any = any || verdict;

    if (as_json) {
      json line{{"record", r + 1}, {"match", verdict}};
      if (cfg.substrings) line["spans"] = spans_json(ev.root);
      if (cfg.stats == "json") line["stats"] = ev.stats;
      if (cfg.dump == "graphs") line["graphs"] = dumps;
      out << line.dump() << '\n';
      continue;
    }
    if (cfg.dump == "graphs") print_dumps(dumps, out);
    const std::string prefix = numbered ? std::to_string(r + 1) + ":" : "";
    if (cfg.substrings) {
      for (auto [i, j] : ev.root.edges()) out << prefix << '[' << i + 1 << ',' << j << "]\n";
    } else {
      out << prefix << (verdict ? "match" : "no match") << '\n';
    }
  }
  return any ? kMatched : kNoMatch;
}

int cmd_inspect(const RunConfig& cfg, std::ostream& out) {
  const Ast ast = parse(cfg.pattern);
  if (cfg.dump == "ast") {
    if (cfg.format == "json") write_json(ast, out);
    else if (cfg.format == "dot") write_dot(ast, out);
    else out << render(ast) << "\nm=" << ast.size() << " k=" << count_extended(ast) << '\n';
    return 0;
  }
  if (cfg.dump == "clusters") {
    const Clustering clustering = build_clusters(ast);
    if (cfg.format == "json") {
      write_json(ast, clustering, out);
    } else if (cfg.format == "dot") {
      write_dot(ast, clustering, out);
    } else {
      const auto& cp = clustering.partition;
      const auto& mt = clustering.macro;
      out << "clusters: " << cp.count() << '\n';
      for (ClusterId c = 0; c < cp.count(); ++c) {
        out << 'C' << c << (mt.at(c).children.empty() ? " leaf" : " internal")
            << " m_C=" << cp.at(c).size() << " size=" << mt.at(c).size
            << (mt.is_heavy(c) ? " heavy" : " light") << " root=" << render(ast, cp.at(c).root);
        if (cp.at(c).extended) out << " p=" << *cp.at(c).extended;
        out << '\n';
      }
    }
    return 0;
  }
  if (cfg.dump == "tnfa") {
    const ClusteredPattern pattern(ast);
    json all = json::array();
    for (ClusterId c = 0; c < pattern.cluster_count(); ++c) {
      const auto& a = pattern.automaton(c);
      if (!a) continue;
      if (cfg.format == "dot") {
        write_dot(*a, out, "tnfa_C" + std::to_string(c));
      } else if (cfg.format == "json") {
        std::ostringstream one;
        write_json(*a, one);
        all.push_back({{"cluster", c}, {"automaton", json::parse(one.str())}});
      } else {
        out << "# cluster " << c << ": " << a->state_count() << " states, start "
            << a->start() << ", accept " << a->accept() << '\n';
        for (const Transition& t : a->transitions()) {
          out << t.from << " -> " << t.to << ' ';
          if (t.label.kind == LabelKind::Epsilon) out << "eps";
          else if (t.label.kind == LabelKind::Beta) out << "beta";
          else out << static_cast<char>(t.label.symbol);
          out << '\n';
        }
      }
    }
    if (cfg.format == "json") out << all.dump(2) << '\n';
    return 0;
  }
  if (cfg.dump == "graphs") {
    if (cfg.text_opt->count() + cfg.file_opt->count() != 1)
      throw UsageError("--dump graphs needs an input string or --file");
    const ClusteredPattern pattern(ast);
    const auto sim = make_simulator(cfg.simulator);
    for (const std::string& record : read_records(cfg)) {
      json dumps = json::array();
      evaluate(cfg, pattern, *sim, record, &dumps);
      if (cfg.format == "json") out << json{{"text", record}, {"graphs", dumps}}.dump(2) << '\n';
      else print_dumps(dumps, out);
    }
    return 0;
  }
  throw UsageError("--dump must be one of ast, clusters, tnfa, graphs");
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (cfg.text_opt->count() != 1) throw UsageError("oracle needs a literal input string");
  const Ast ast = parse(cfg.pattern);
  Alphabet sigma = Alphabet::for_match(ast, cfg.text);
  if (cfg.alphabet_opt->count() != 0) {
    check_alphabet(cfg, ast, {cfg.text});
    sigma = Alphabet(cfg.alphabet);
  }
  const MatchGraph g = oracle_match_graph(ast, cfg.text, sigma, feasibility_cap_from_env());
  for (auto [i, j] : g.edges()) out << '[' << i + 1 << ',' << j << "]\n";
  const bool verdict = g.has_edge(0, cfg.text.size());
  out << (verdict ? "match" : "no match") << '\n';
  return verdict ? kMatched : kNoMatch;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& spec, const char* flag) {
  try {
    const auto colon = spec.find(':');
    std::size_t used = 0;
    const std::size_t lo = std::stoul(spec.substr(0, colon), &used);
    if (used != spec.substr(0, colon).size()) throw std::invalid_argument(spec);
    std::size_t hi = lo;
    if (colon != std::string::npos) {
      hi = std::stoul(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
    }
    if (hi < lo) throw std::invalid_argument(spec);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + " expects N or LO:HI, got '" + spec + "'");
  }
}

template <typename F>
std::uint64_t median_ns(std::size_t runs, F&& body) {
  std::vector<std::uint64_t> times;
  for (std::size_t r = 0; r < runs; ++r) {
    const auto began = std::chrono::steady_clock::now();
    body();
    times.push_back(static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                                   std::chrono::steady_clock::now() - began)
                                                   .count()));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

int cmd_bench(const BenchConfig& cfg, const std::string& simulator, std::ostream& out) {
  const auto [n_lo, n_hi] = parse_range(cfg.n, "--n");
  const auto [m_lo, m_hi] = parse_range(cfg.m, "--m");
  const auto [k_lo, k_hi] = parse_range(cfg.k, "--k");
  if (m_lo == 0) throw UsageError("--m must be at least 1");
  if (cfg.runs == 0) throw UsageError("--runs must be at least 1");
  const auto sim = make_simulator(simulator);

  Rng rng(cfg.seed);
  json rows = json::array();
  for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
    AstShape shape;
    shape.nodes = std::uniform_int_distribution<std::size_t>(m_lo, m_hi)(rng);
    shape.extended = std::uniform_int_distribution<std::size_t>(k_lo, k_hi)(rng);
    shape.symbols = cfg.symbols;
    const Ast ast = random_ast(rng, shape);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(n_lo, n_hi)(rng);
    const std::string text = random_text(rng, n, cfg.symbols);

    const ClusteredPattern pattern(ast);
    bool dp_verdict = false;
    DpStats dp_stats;
    MatchResult naive;
    MatchResult heavy;
    const auto dp_ns = median_ns(cfg.runs, [&] { dp_verdict = dp_is_match(ast, text, &dp_stats); });
    const auto naive_ns = median_ns(cfg.runs, [&] {
      naive = match_clustered(pattern, text, *sim, TraversalMode::NaiveBottomUp);
    });
    const auto heavy_ns = median_ns(cfg.runs, [&] {
      heavy = match_clustered(pattern, text, *sim, TraversalMode::HeavyPath);
    });
    if (naive.matched != dp_verdict || heavy.matched != dp_verdict)
      throw std::logic_error("engines disagree on bench instance " + std::to_string(inst));

    rows.push_back({{"instance", inst},
                    {"n", n},
                    {"m", ast.size()},
                    {"k", count_extended(ast)},
                    {"ell", pattern.cluster_count()},
                    {"match", dp_verdict},
                    {"dp", {{"time_ns", dp_ns}, {"peak_live_graphs", dp_stats.peak_live_graphs}}},
                    {"naive", {{"time_ns", naive_ns}, {"peak_live_graphs", naive.stats.peak_live_graphs}}},
                    {"heavy_path",
                     {{"time_ns", heavy_ns}, {"peak_live_graphs", heavy.stats.peak_live_graphs}}}});
  }

  if (cfg.format == "json") {
    out << json{{"seed", cfg.seed}, {"runs", cfg.runs}, {"simulator", simulator}, {"instances", rows}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "inst      n      m   k  ell  match       dp_us    naive_us    heavy_us  peak(dp/naive/heavy)\n";
  for (const json& row : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%4zu %6zu %6zu %3zu %4zu  %-5s %11.1f %11.1f %11.1f  %zu/%zu/%zu\n",
                  row["instance"].get<std::size_t>(), row["n"].get<std::size_t>(),
                  row["m"].get<std::size_t>(), row["k"].get<std::size_t>(),
                  row["ell"].get<std::size_t>(), row["match"].get<bool>() ? "yes" : "no",
                  row["dp"]["time_ns"].get<double>() / 1e3,
                  row["naive"]["time_ns"].get<double>() / 1e3,
                  row["heavy_path"]["time_ns"].get<double>() / 1e3,
                  row["dp"]["peak_live_graphs"].get<std::size_t>(),
                  row["naive"]["peak_live_graphs"].get<std::size_t>(),
                  row["heavy_path"]["peak_live_graphs"].get<std::size_t>());
    out << line;
  }
  return 0;
}

void add_input_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("-e,--pattern", cfg.pattern, "extended regular expression")->required();
  cfg.text_opt = app->add_option("text", cfg.text, "input string matched as a whole record");
  cfg.file_opt = app->add_option("-f,--file", cfg.file, "file of newline-delimited records");
  cfg.alphabet_opt = app->add_option("--alphabet", cfg.alphabet,
                                     "alphabet for complements; must cover pattern and input");
}

void add_engine_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--algo", cfg.algo, "matching algorithm")
      ->check(CLI::IsMember({"dp", "clustered"}))
      ->capture_default_str();
  app->add_option("--space", cfg.space, "macro-tree traversal for --algo clustered")
      ->check(CLI::IsMember({"naive", "heavy-path"}))
      ->capture_default_str();
  app->add_option("--simulator", cfg.simulator, "automaton simulator")
      ->check(CLI::IsMember(simulator_names()))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended regular expression matching with intersection and complement", "xregex"};
  app.require_subcommand(1);

  RunConfig match_cfg;
  auto* match = app.add_subcommand("match", "decide whether records match the pattern");
  add_input_options(match, match_cfg);
  add_engine_options(match, match_cfg);
  match->add_flag("--substrings", match_cfg.substrings,
                  "print every matching span [i,j] (1-based, inclusive)");
  match->add_flag("--search", match_cfg.search, "a record matches if any substring matches");
  match->add_option("--stats", match_cfg.stats, "emit engine statistics")
      ->check(CLI::IsMember({"json"}));
  match->add_option("--dump", match_cfg.dump, "also print per-node or per-cluster graphs")
      ->check(CLI::IsMember({"ast", "clusters", "tnfa", "graphs"}));
  match->add_option("--format", match_cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  RunConfig inspect_cfg;
  auto* inspect = app.add_subcommand("inspect", "dump the parse tree, clusters, automata or graphs");
  add_input_options(inspect, inspect_cfg);
  add_engine_options(inspect, inspect_cfg);
  inspect->add_option("--dump", inspect_cfg.dump, "what to dump")
      ->required()
      ->check(CLI::IsMember({"ast", "clusters", "tnfa", "graphs"}));
  inspect->add_option("--format", inspect_cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();

  RunConfig clusters_cfg;
  clusters_cfg.dump = "clusters";
  clusters_cfg.format = "json";
  auto* clusters = app.add_subcommand("clusters", "dump the cluster partition and macro tree");
  clusters->add_option("-e,--pattern", clusters_cfg.pattern, "extended regular expression")
      ->required();
  clusters->add_option("--format", clusters_cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();

  BenchConfig bench_cfg;
  std::string bench_simulator = "thompson";
  auto* bench = app.add_subcommand("bench", "time dp against clustered on seeded random instances");
  bench->add_option("--seed", bench_cfg.seed, "generator seed")->capture_default_str();
  bench->add_option("--n", bench_cfg.n, "text length, N or LO:HI")->capture_default_str();
  bench->add_option("--m", bench_cfg.m, "pattern nodes, N or LO:HI")->capture_default_str();
  bench->add_option("--k", bench_cfg.k, "extended operators, N or LO:HI")->capture_default_str();
  bench->add_option("--instances", bench_cfg.instances, "instance count")->capture_default_str();
  bench->add_option("--runs", bench_cfg.runs, "timed runs per engine (median kept)")
      ->capture_default_str();
  bench->add_option("--symbols", bench_cfg.symbols, "alphabet of patterns and texts")
      ->capture_default_str();
  bench->add_option("--simulator", bench_simulator, "automaton simulator")
      ->check(CLI::IsMember(simulator_names()))
      ->capture_default_str();
  bench->add_option("--format", bench_cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  RunConfig oracle_cfg;
  auto* oracle = app.add_subcommand("oracle", "brute-force language enumeration");
  oracle->group("");
  add_input_options(oracle, oracle_cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "xregex: " << e.what() << '\n';
    return kError;
  }

  try {
    if (match->parsed()) return cmd_match(match_cfg, out);
    if (inspect->parsed()) return cmd_inspect(inspect_cfg, out);
    if (clusters->parsed()) return cmd_inspect(clusters_cfg, out);
    if (bench->parsed()) return cmd_bench(bench_cfg, bench_simulator, out);
    if (oracle->parsed()) return cmd_oracle(oracle_cfg, out);
  } catch (const ParseError& e) {
    err << "xregex: pattern error at " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "xregex: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace xregex::cli
