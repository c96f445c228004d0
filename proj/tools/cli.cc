#include "cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "firmml/attributed.h"
#include "firmml/errors.h"
#include "firmml/firmcore.h"
#include "firmml/firmtruss.h"
#include "firmml/graph.h"
#include "firmml/metrics.h"
#include "firmml/oracle.h"
#include "firmml/parallel.h"
#include "firmml/search.h"
#include "firmml/synthetic.h"

namespace firmml::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Algo {
  Structure structure = Structure::kFirmTruss;
  Strategy strategy = Strategy::kGlobal;
  bool indexed = false;
};

Algo parse_algo(const std::string& name) {
  Algo a;
  auto dash = name.find('-');
  if (dash == std::string::npos) throw ValidationError("unknown algorithm " + name);
  std::string family = name.substr(0, dash), kind = name.substr(dash + 1);
  if (family == "ftcs") a.structure = Structure::kFirmTruss;
  else if (family == "fccs") a.structure = Structure::kFirmCore;
  else throw ValidationError("unknown algorithm " + name);
  if (!kind.empty() && kind[0] == 'i') {
    a.indexed = true;
    kind = kind.substr(1);
  }
  if (kind == "global") a.strategy = Strategy::kGlobal;
  else if (kind == "local") a.strategy = Strategy::kLocal;
  else throw ValidationError("unknown algorithm " + name);
  return a;
}

Structure parse_structure(const std::string& s) {
  if (s == "firmtruss") return Structure::kFirmTruss;
  if (s == "firmcore") return Structure::kFirmCore;
  throw ValidationError("unknown structure " + s);
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("bad value for --p: " + s);
  }
  if (used != s.size() || std::isnan(p)) throw ValidationError("bad value for --p: " + s);
  return p;
}

std::vector<NodeId> resolve_query(const MultilayerGraph& g, const std::vector<std::string>& labels) {
  if (labels.empty()) throw ValidationError("empty query");
  return resolve_labels(g, labels);
}

json labels_of(const MultilayerGraph& g, std::span<const NodeId> ids) {
  auto arr = json::array();
  for (NodeId v : ids) arr.push_back(g.node_label(v));
  return arr;
}

json distance_json(Distance d) {
  if (d == kInfiniteDistance) return "inf";
  return d;
}

json p_json(double p) {
  if (std::isinf(p)) return p > 0 ? "inf" : "-inf";
  return p;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + cell(x);
    return s;
  }
  return v.dump();
}

enum class Format { kJson, kCsv, kText };

Format parse_format(const std::string& f) {
  if (f == "json") return Format::kJson;
  if (f == "csv") return Format::kCsv;
  if (f == "text") return Format::kText;
  throw ValidationError("unknown format " + f);
}

// Rows share their keys. JSON prints a single row as an object.
void emit(std::ostream& out, const std::vector<json>& rows, Format f) {
  if (f == Format::kJson) {
    if (rows.size() == 1) out << rows[0].dump() << '\n';
    else out << json(rows).dump() << '\n';
    return;
  }
  if (rows.empty()) return;
  if (f == Format::kCsv) {
    bool first = true;
    for (const auto& [key, _] : rows[0].items()) {
      out << (first ? "" : ",") << key;
      first = false;
    }
    out << '\n';
    for (const auto& r : rows) {
      first = true;
      for (const auto& [_, v] : r.items()) {
        out << (first ? "" : ",") << cell(v);
        first = false;
      }
      out << '\n';
    }
    return;
  }
  for (const auto& r : rows) {
    for (const auto& [key, v] : r.items()) out << key << ": " << cell(v) << '\n';
    if (rows.size() > 1) out << '\n';
  }
}

struct IndexHolder {
  std::optional<SkylineIndex> truss;
  std::optional<SkylineCoreness> core;
  SearchIndexes refs() const {
    return {truss ? &*truss : nullptr, core ? &*core : nullptr};
  }
};

// Loads the index file when given, or builds it in memory for the indexed
// algorithms. Returns whether the search should use it.
bool prepare_index(const MultilayerGraph& g, Structure s, bool wanted, const std::string& path,
                   IndexHolder& holder) {
  if (path.empty() && !wanted) return false;
  if (!path.empty() && !std::filesystem::exists(path))
    throw ValidationError("index file not found: " + path);
  if (s == Structure::kFirmTruss)
    holder.truss = path.empty() ? firmtruss_decomposition(g) : index_read(path);
  else
    holder.core = path.empty() ? firmcore_decomposition(g) : coreness_read(path);
  return true;
}

json community_json(const MultilayerGraph& g, const std::string& algorithm, const Community& c,
                    double elapsed_ms) {
  json j;
  j["algorithm"] = algorithm;
  j["k"] = c.params.k;
  j["lambda"] = c.params.lambda;
  j["query"] = labels_of(g, c.params.query);
  auto nodes = c.nodes.members();
  j["nodes"] = labels_of(g, nodes);
  j["query_distance"] = distance_json(c.query_distance);
  j["diameter"] = distance_json(c.diameter);
  if (!c.diameter_exact) j["diameter_is_bound"] = true;
  j["elapsed_ms"] = elapsed_ms;
  j["iterations"] = c.trace.iterations;
  return j;
}

struct Common {
  std::string graph;
  std::uint32_t k = 2;
  std::uint32_t lambda = 1;
  std::vector<std::string> query;
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c, bool with_query = true) {
  sub->add_option("--graph", c.graph, "edge list (layer src dst)")->required();
  sub->add_option("--k", c.k, "k")->required();
  sub->add_option("--lambda", c.lambda, "lambda")->required();
  if (with_query) sub->add_option("--query", c.query, "query node labels")->required()->delimiter(',');
  sub->add_option("--format", c.format, "json, csv or text");
}

// ---- subcommands ------------------------------------------------------------

struct StatsArgs {
  std::string graph;
  std::string format = "json";
};

int run_stats(const StatsArgs& a, std::ostream& out) {
  auto g = load_graph(a.graph);
  json j;
  j["nodes"] = g.num_nodes();
  j["layers"] = g.num_layers();
  j["edges"] = g.num_edges();
  j["edge_schemas"] = g.num_schemas();
  j["self_loops_dropped"] = g.dropped_self_loops();
  j["duplicates_merged"] = g.merged_duplicates();
  std::vector<std::size_t> per_layer(g.num_layers(), 0);
  for (SlotId e = 0; e < g.num_edges(); ++e) ++per_layer[g.slot_layer(e)];
  json layers = json::object();
  for (LayerId l = 0; l < g.num_layers(); ++l) layers[g.layer_label(l)] = per_layer[l];
  j["edges_per_layer"] = layers;
  emit(out, {j}, parse_format(a.format));
  return kOk;
}

struct DecomposeArgs {
  std::string graph;
  std::string mode = "firmtruss";
  std::string out;
  std::string json_out;
};

int run_decompose(const DecomposeArgs& a, std::ostream& out) {
  Structure s = parse_structure(a.mode);
  auto g = load_graph(a.graph);
  auto t0 = Clock::now();
  json j;
  j["mode"] = a.mode;
  if (s == Structure::kFirmTruss) {
    auto index = firmtruss_decomposition(g);
    j["elapsed_ms"] = ms_since(t0);
    j["records"] = index.schemas.size();
    if (!a.out.empty()) index_write(index, a.out);
    if (!a.json_out.empty()) std::ofstream(a.json_out) << index_to_json(g, index) << '\n';
  } else {
    auto index = firmcore_decomposition(g);
    j["elapsed_ms"] = ms_since(t0);
    j["records"] = index.pairs.size();
    if (!a.out.empty()) coreness_write(index, a.out);
    if (!a.json_out.empty()) std::ofstream(a.json_out) << coreness_to_json(g, index) << '\n';
  }
  if (!a.out.empty()) {
    j["out"] = a.out;
    j["bytes"] = std::filesystem::file_size(a.out);
  }
  out << j.dump() << '\n';
  return kOk;
}

struct SearchArgs {
  Common c;
  std::string algo = "ftcs-global";
  std::string index;
  std::string diameter = "exact";
  std::size_t diameter_cap = 2000;
};

SearchParams make_params(const MultilayerGraph& g, const Common& c, const Algo& algo) {
  SearchParams p;
  p.k = c.k;
  p.lambda = c.lambda;
  p.query = resolve_query(g, c.query);
  p.structure = algo.structure;
  p.strategy = algo.strategy;
  return p;
}

int run_search(const SearchArgs& a, std::ostream& out) {
  Algo algo = parse_algo(a.algo);
  auto format = parse_format(a.c.format);
  auto g = load_graph(a.c.graph);
  SearchParams p = make_params(g, a.c, algo);
  if (a.diameter == "bound") p.diameter_mode = DiameterMode::kBound;
  else if (a.diameter != "exact") throw ValidationError("unknown diameter mode " + a.diameter);
  p.exact_diameter_cap = a.diameter_cap;
  IndexHolder holder;
  p.use_index = prepare_index(g, algo.structure, algo.indexed, a.index, holder);
  auto t0 = Clock::now();
  Community c = search_community(g, p, holder.refs());
  double ms = ms_since(t0);
  emit(out, {community_json(g, a.algo, c, ms)}, format);
  return kOk;
}

struct AsearchArgs {
  Common c;
  std::string attributes;
  std::string p = "1";
  std::string index;
};

int run_asearch(const AsearchArgs& a, std::ostream& out) {
  double p = parse_p(a.p);
  auto format = parse_format(a.c.format);
  if (p == 0) throw UnsupportedParameter("p = 0 is not supported for attributed search");
  auto g = load_graph(a.c.graph);
  auto attrs = load_attributes(a.attributes, g);
  auto query = resolve_query(g, a.c.query);
  IndexHolder holder;
  prepare_index(g, Structure::kFirmTruss, false, a.index, holder);
  HomophilyContext ctx(cosine_similarity(attrs), p);
  auto t0 = Clock::now();
  auto r = attributed_search(g, ctx, a.c.k, a.c.lambda, query, holder.truss ? &*holder.truss : nullptr);
  double ms = ms_since(t0);
  std::string name = std::isinf(p) ? (p > 0 ? "aftcs-maxinf" : "aftcs-maxmin") : "aftcs-approx";
  json j = community_json(g, name, r.community, ms);
  j["p"] = p_json(p);
  j["homophily_score"] = r.score;
  j["removed_as_free_riders"] = r.removed;
  emit(out, {j}, format);
  return kOk;
}

struct EvalArgs {
  std::string graph;
  std::string truth;
  std::uint32_t k = 2;
  std::uint32_t lambda = 1;
  std::string algo = "ftcs-global";
  std::string index;
  double beta = 1;
  std::size_t query_size = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
};

int run_eval(const EvalArgs& a, std::ostream& out) {
  Algo algo = parse_algo(a.algo);
  auto format = parse_format(a.format);
  if (a.beta < 0) throw ValidationError("beta must be >= 0");
  if (a.query_size == 0) throw ValidationError("query size must be positive");
  auto g = load_graph(a.graph);
  auto truth = load_ground_truth(a.truth, g);
  IndexHolder holder;
  bool use_index = prepare_index(g, algo.structure, algo.indexed, a.index, holder);
  std::mt19937_64 rng(a.seed);
  std::vector<json> rows;
  double f1_sum = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto members = truth[i];
    if (members.empty()) continue;
    std::shuffle(members.begin(), members.end(), rng);
    std::vector<NodeId> query(members.begin(),
                              members.begin() + static_cast<std::ptrdiff_t>(std::min(a.query_size, members.size())));
    std::sort(query.begin(), query.end());
    SearchParams p;
    p.k = a.k;
    p.lambda = a.lambda;
    p.query = query;
    p.structure = algo.structure;
    p.strategy = algo.strategy;
    p.use_index = use_index;
    json row;
    row["community"] = i;
    row["query"] = labels_of(g, query);
    try {
      Community c = search_community(g, p, holder.refs());
      auto found = c.nodes.members();
      double f1 = f1_score(found, truth[i]);
      f1_sum += f1;
      row["f1"] = f1;
      row["density"] = density(c.view(g), a.beta);
      row["diameter"] = distance_json(c.diameter);
      row["size"] = found.size();
    } catch (const NoCommunity&) {
      row["f1"] = 0.0;
      row["density"] = 0.0;
      row["diameter"] = "inf";
      row["size"] = 0;
    }
    rows.push_back(std::move(row));
  }
  if (format == Format::kJson) {
    json j;
    j["algorithm"] = a.algo;
    j["beta"] = a.beta;
    j["mean_f1"] = rows.empty() ? 0.0 : f1_sum / static_cast<double>(rows.size());
    j["rows"] = rows;
    out << j.dump() << '\n';
  } else {
    emit(out, rows, format);
  }
  return kOk;
}

struct OracleArgs {
  Common c;
  std::string structure;
  std::string algo;
  std::size_t budget = 12;
  std::size_t max_layers = 3;
  double timeout = 30;
};

int run_oracle(const OracleArgs& a, std::ostream& out) {
  Structure s = Structure::kFirmTruss;
  if (!a.structure.empty()) s = parse_structure(a.structure);
  else if (!a.algo.empty()) s = parse_algo(a.algo).structure;
  auto g = load_graph(a.c.graph);
  auto query = resolve_query(g, a.c.query);
  oracle::OracleBudget b{a.budget, a.max_layers, a.timeout};
  auto t0 = Clock::now();
  auto best = oracle::brute_min_diameter_community(g, a.c.k, a.c.lambda, query, s, b);
  if (!best) throw NoCommunity("no feasible community");
  json j;
  j["structure"] = s == Structure::kFirmTruss ? "firmtruss" : "firmcore";
  j["k"] = a.c.k;
  j["lambda"] = a.c.lambda;
  j["query"] = labels_of(g, query);
  j["diameter"] = static_cast<Distance>(best->value);
  auto optima = json::array();
  for (const auto& h : best->optima) {
    auto m = h.members();
    optima.push_back(labels_of(g, m));
  }
  j["nodes"] = optima[0];
  j["optima"] = optima;
  j["elapsed_ms"] = ms_since(t0);
  emit(out, {j}, parse_format(a.c.format));
  return kOk;
}

struct GenArgs {
  std::size_t nodes = 100;
  std::size_t layers = 2;
  std::vector<std::string> plants;
  double noise = 0;
  std::uint64_t seed = 1;
  std::size_t attribute_dim = 0;
  std::string out;
  std::string truth;
  std::string attributes;
};

PlantParams parse_plant(const std::string& s) {
  PlantParams p;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> p.k >> c1 >> p.lambda >> c2 >> p.size) || c1 != ',' || c2 != ',' || !in.eof())
    throw ValidationError("plant must be k,lambda,size: " + s);
  return p;
}

int run_gen(const GenArgs& a, std::ostream& out) {
  SyntheticParams sp;
  sp.nodes = a.nodes;
  sp.layers = a.layers;
  for (const auto& s : a.plants) sp.plants.push_back(parse_plant(s));
  sp.noise = a.noise;
  sp.seed = a.seed;
  sp.attribute_dim = a.attribute_dim;
  if (a.attribute_dim > 0 && a.attributes.empty())
    throw ValidationError("--attr-dim needs --attributes");
  auto syn = generate_synthetic(sp);
  auto open = [](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path);
    return f;
  };
  if (a.out.empty()) {
    write_edge_list(syn.graph, out);
  } else {
    auto f = open(a.out);
    write_edge_list(syn.graph, f);
  }
  if (!a.truth.empty()) {
    auto f = open(a.truth);
    write_ground_truth(syn.graph, syn.communities, f);
  }
  if (syn.attributes) {
    auto f = open(a.attributes);
    write_attributes(syn.graph, *syn.attributes, f);
  }
  return kOk;
}

struct BenchArgs {
  std::string graph;
  std::uint32_t k = 2;
  std::uint32_t lambda = 1;
  std::string algo = "ftcs-ilocal";
  std::string index;
  std::size_t queries = 100;
  std::uint64_t seed = 1;
};

double percentile(std::vector<double> xs, double q) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  auto i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size()))) ;
  return xs[std::min(xs.size() - 1, i == 0 ? 0 : i - 1)];
}

int run_bench(const BenchArgs& a, std::ostream& out) {
  Algo algo = parse_algo(a.algo);
  auto t0 = Clock::now();
  auto g = load_graph(a.graph);
  double load_ms = ms_since(t0);
  t0 = Clock::now();
  IndexHolder holder;
  bool use_index = prepare_index(g, algo.structure, algo.indexed, a.index, holder);
  double index_ms = ms_since(t0);

  std::vector<NodeId> pool;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (!g.union_neighbors(v).empty()) pool.push_back(v);
  if (pool.empty()) throw ValidationError("graph has no edges");
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<NodeId> queries(a.queries);
  for (auto& q : queries) q = pool[pick(rng)];

  std::vector<double> total(a.queries, -1), g0(a.queries, 0), loop(a.queries, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < queries.size();) {
      SearchParams p;
      p.k = a.k;
      p.lambda = a.lambda;
      p.query = {queries[i]};
      p.structure = algo.structure;
      p.strategy = algo.strategy;
      p.use_index = use_index;
      p.diameter_mode = DiameterMode::kBound;
      auto q0 = Clock::now();
      try {
        Community c = search_community(g, p, holder.refs());
        g0[i] = c.trace.g0_ms;
        loop[i] = c.trace.loop_ms;
      } catch (const NoCommunity&) {
      }
      total[i] = ms_since(q0);
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(thread_budget(), queries.size()));
  std::vector<std::thread> pool_threads;
  for (std::size_t t = 1; t < threads; ++t) pool_threads.emplace_back(worker);
  worker();
  for (auto& t : pool_threads) t.join();

  json j;
  j["algorithm"] = a.algo;
  j["k"] = a.k;
  j["lambda"] = a.lambda;
  j["queries"] = a.queries;
  j["threads"] = threads;
  j["load_ms"] = load_ms;
  j["index_ms"] = index_ms;
  j["g0_ms_median"] = percentile(g0, 0.5);
  j["loop_ms_median"] = percentile(loop, 0.5);
  j["query_ms_median"] = percentile(total, 0.5);
  j["query_ms_p90"] = percentile(total, 0.9);
  out << j.dump() << '\n';
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense-structure extraction and community search on multilayer graphs", "firmml"};
  app.require_subcommand(1);

  StatsArgs stats;
  auto* s_stats = app.add_subcommand("stats", "graph summary");
  s_stats->add_option("--graph", stats.graph)->required();
  s_stats->add_option("--format", stats.format);

  DecomposeArgs dec;
  auto* s_dec = app.add_subcommand("decompose", "skyline index of every edge schema or node");
  s_dec->add_option("--graph", dec.graph)->required();
  s_dec->add_option("--mode", dec.mode, "firmtruss or firmcore");
  s_dec->add_option("--out", dec.out, "binary index file");
  s_dec->add_option("--json", dec.json_out, "JSON export");

  SearchArgs search;
  auto* s_search = app.add_subcommand("search", "minimum-diameter community search");
  add_common(s_search, search.c);
  s_search->add_option("--algo", search.algo, "ftcs|fccs - global|local|iglobal|ilocal");
  s_search->add_option("--index", search.index, "index file from decompose");
  s_search->add_option("--diameter", search.diameter, "exact or bound");
  s_search->add_option("--diameter-cap", search.diameter_cap);

  AsearchArgs asearch;
  auto* s_asearch = app.add_subcommand("asearch", "attributed community search");
  add_common(s_asearch, asearch.c);
  s_asearch->add_option("--attributes", asearch.attributes)->required();
  s_asearch->add_option("--p", asearch.p, "real, inf or -inf");
  s_asearch->add_option("--index", asearch.index);

  EvalArgs eval;
  auto* s_eval = app.add_subcommand("eval", "F1, density and diameter against ground truth");
  s_eval->add_option("--graph", eval.graph)->required();
  s_eval->add_option("--ground-truth", eval.truth)->required();
  s_eval->add_option("--k", eval.k)->required();
  s_eval->add_option("--lambda", eval.lambda)->required();
  s_eval->add_option("--algo", eval.algo);
  s_eval->add_option("--index", eval.index);
  s_eval->add_option("--beta", eval.beta);
  s_eval->add_option("--query-size", eval.query_size);
  s_eval->add_option("--seed", eval.seed);
  s_eval->add_option("--format", eval.format);

  OracleArgs orc;
  auto* s_orc = app.add_subcommand("oracle", "exhaustive minimum-diameter community");
  add_common(s_orc, orc.c);
  s_orc->add_option("--structure", orc.structure, "firmtruss or firmcore");
  s_orc->add_option("--algo", orc.algo, "structure taken from the algorithm family");
  s_orc->add_option("--budget", orc.budget, "max nodes");
  s_orc->add_option("--max-layers", orc.max_layers);
  s_orc->add_option("--timeout", orc.timeout, "seconds");

  GenArgs gen;
  auto* s_gen = app.add_subcommand("gen", "synthetic graph with planted communities");
  s_gen->add_option("--nodes", gen.nodes);
  s_gen->add_option("--layers", gen.layers);
  s_gen->add_option("--plant", gen.plants, "k,lambda,size (repeatable)");
  s_gen->add_option("--noise", gen.noise, "expected noise degree per node per layer");
  s_gen->add_option("--seed", gen.seed);
  s_gen->add_option("--attr-dim", gen.attribute_dim);
  s_gen->add_option("--out", gen.out, "edge list (default stdout)");
  s_gen->add_option("--truth", gen.truth, "ground-truth communities");
  s_gen->add_option("--attributes", gen.attributes, "attribute file");

  BenchArgs bench;
  auto* s_bench = app.add_subcommand("bench", "per-phase timings over random queries");
  s_bench->add_option("--graph", bench.graph)->required();
  s_bench->add_option("--k", bench.k)->required();
  s_bench->add_option("--lambda", bench.lambda)->required();
  s_bench->add_option("--algo", bench.algo);
  s_bench->add_option("--index", bench.index);
  s_bench->add_option("--queries", bench.queries);
  s_bench->add_option("--seed", bench.seed);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (s_stats->parsed()) return run_stats(stats, out);
    if (s_dec->parsed()) return run_decompose(dec, out);
    if (s_search->parsed()) return run_search(search, out);
    if (s_asearch->parsed()) return run_asearch(asearch, out);
    if (s_eval->parsed()) return run_eval(eval, out);
    if (s_orc->parsed()) return run_oracle(orc, out);
    if (s_gen->parsed()) return run_gen(gen, out);
    if (s_bench->parsed()) return run_bench(bench, out);
  } catch (const NoCommunity& e) {
    err << "no community: " << e.what() << '\n';
    out << "{\"nodes\": []}\n";
    return kNoCommunity;
  } catch (const IndexMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kIndexError;
  } catch (const CorruptIndex& e) {
    err << "error: " << e.what() << '\n';
    return kIndexError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace firmml::cli
