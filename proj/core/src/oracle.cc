#include "firmml/oracle.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

#include "firmml/errors.h"

namespace firmml::oracle {

namespace {

using Mask = std::uint64_t;

// Per-layer adjacency bitmasks of the whole graph.
struct Dense {
  std::size_t n = 0;
  std::size_t layers = 0;
  std::vector<Mask> adj;               // l * n + v
  std::vector<NodeId> su, sv;          // schema endpoints
  std::vector<std::uint32_t> present;  // schema layer bitmask

  Mask nb(std::size_t l, NodeId v) const { return adj[l * n + v]; }
};

Dense densify(const MultilayerGraph& g) {
  if (g.num_nodes() > 64) throw BudgetExceeded("oracle graphs are limited to 64 nodes");
  if (g.num_layers() > 32) throw BudgetExceeded("oracle graphs are limited to 32 layers");
  Dense d;
  d.n = g.num_nodes();
  d.layers = g.num_layers();
  d.adj.assign(d.n * d.layers, 0);
  for (SchemaId s = 0; s < g.num_schemas(); ++s) {
    auto [u, v] = g.schema(s);
    std::uint32_t m = 0;
    for (LayerId l : g.schema_layers(s)) {
      d.adj[l * d.n + u] |= Mask{1} << v;
      d.adj[l * d.n + v] |= Mask{1} << u;
      m |= 1u << l;
    }
    d.su.push_back(u);
    d.sv.push_back(v);
    d.present.push_back(m);
  }
  return d;
}

Mask to_mask(const VertexSubset& s) {
  Mask m = 0;
  for (NodeId v : s.members()) m |= Mask{1} << v;
  return m;
}

VertexSubset from_mask(std::size_t n, Mask m) {
  VertexSubset s(n);
  for (std::size_t v = 0; v < n; ++v)
    if (m >> v & 1) s.insert(static_cast<NodeId>(v));
  return s;
}

class Clock {
 public:
  explicit Clock(double seconds) : limit_(seconds), start_(std::chrono::steady_clock::now()) {}
  void check() const {
    std::chrono::duration<double> e = std::chrono::steady_clock::now() - start_;
    if (e.count() > limit_) throw BudgetExceeded("oracle timed out");
  }

 private:
  double limit_;
  std::chrono::steady_clock::time_point start_;
};

void check_budget(const MultilayerGraph& g, const OracleBudget& b) {
  if (g.num_nodes() > b.max_nodes) throw BudgetExceeded("graph has too many nodes for the oracle");
  if (g.num_layers() > b.max_layers)
    throw BudgetExceeded("graph has too many layers for the oracle");
}

bool core_ok(const Dense& d, Mask h, NodeId v, std::uint32_t k, std::uint32_t lambda) {
  std::uint32_t good = 0;
  for (std::size_t l = 0; l < d.layers; ++l)
    if (static_cast<std::uint32_t>(std::popcount(d.nb(l, v) & h)) >= k) ++good;
  return good >= lambda;
}

// Adjacency restricted to a set of live schemas.
std::vector<Mask> live_adjacency(const Dense& d, const std::vector<bool>& alive) {
  std::vector<Mask> a(d.n * d.layers, 0);
  for (std::size_t s = 0; s < alive.size(); ++s) {
    if (!alive[s]) continue;
    for (std::size_t l = 0; l < d.layers; ++l)
      if (d.present[s] >> l & 1) {
        a[l * d.n + d.su[s]] |= Mask{1} << d.sv[s];
        a[l * d.n + d.sv[s]] |= Mask{1} << d.su[s];
      }
  }
  return a;
}

bool truss_ok(const Dense& d, const std::vector<Mask>& a, std::size_t s, std::uint32_t k,
              std::uint32_t lambda) {
  std::uint32_t good = 0;
  for (std::size_t l = 0; l < d.layers; ++l) {
    if (!(d.present[s] >> l & 1)) continue;
    auto sup = std::popcount(a[l * d.n + d.su[s]] & a[l * d.n + d.sv[s]]);
    if (static_cast<std::int64_t>(sup) >= static_cast<std::int64_t>(k) - 2) ++good;
  }
  return good >= lambda;
}

void check_params(std::uint32_t k, std::uint32_t lambda, std::size_t layers, Structure st) {
  if (lambda < 1 || lambda > layers) throw std::domain_error("lambda out of range");
  if (st == Structure::kFirmTruss && k < 2) throw std::domain_error("FirmTruss needs k >= 2");
}

struct Fix {
  Mask nodes = 0;
  std::vector<bool> schemas;
};

Fix fixpoint(const Dense& d, std::uint32_t k, std::uint32_t lambda, Structure st, Mask within,
             std::mt19937_64* rng) {
  Fix out;
  if (st == Structure::kFirmCore) {
    Mask h = within;
    for (;;) {
      std::vector<NodeId> bad;
      for (std::size_t v = 0; v < d.n; ++v)
        if ((h >> v & 1) && !core_ok(d, h, static_cast<NodeId>(v), k, lambda))
          bad.push_back(static_cast<NodeId>(v));
      if (bad.empty()) break;
      std::size_t pick = rng ? std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(*rng) : 0;
      h &= ~(Mask{1} << bad[pick]);
    }
    out.nodes = h;
    out.schemas.assign(d.su.size(), false);
    for (std::size_t s = 0; s < d.su.size(); ++s)
      out.schemas[s] = (h >> d.su[s] & 1) && (h >> d.sv[s] & 1);
    return out;
  }
  std::vector<bool> alive(d.su.size());
  for (std::size_t s = 0; s < alive.size(); ++s)
    alive[s] = (within >> d.su[s] & 1) && (within >> d.sv[s] & 1);
  for (;;) {
    auto a = live_adjacency(d, alive);
    std::vector<std::size_t> bad;
    for (std::size_t s = 0; s < alive.size(); ++s)
      if (alive[s] && !truss_ok(d, a, s, k, lambda)) bad.push_back(s);
    if (bad.empty()) break;
    std::size_t pick = rng ? std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(*rng) : 0;
    alive[bad[pick]] = false;
  }
  for (std::size_t s = 0; s < alive.size(); ++s)
    if (alive[s]) out.nodes |= (Mask{1} << d.su[s]) | (Mask{1} << d.sv[s]);
  out.schemas = std::move(alive);
  return out;
}

BruteSubgraph to_result(const MultilayerGraph& g, const Dense& d, const Fix& f) {
  BruteSubgraph r{from_mask(d.n, f.nodes), SchemaSet(g.num_schemas())};
  for (std::size_t s = 0; s < f.schemas.size(); ++s)
    if (f.schemas[s]) r.schemas.insert(static_cast<SchemaId>(s));
  return r;
}

// BFS on the explicit supra-graph: state v * L + l, intra-layer edges plus a
// unit edge between every two copies of a node.
std::vector<Distance> bfs_supra(const Dense& d, const std::vector<Mask>& adj, Mask nodes,
                                NodeId src) {
  const std::size_t states = d.n * d.layers;
  std::vector<Distance> dist(states, kInfiniteDistance);
  std::deque<std::size_t> q;
  for (std::size_t l = 0; l < d.layers; ++l) {
    dist[src * d.layers + l] = 0;
    q.push_back(src * d.layers + l);
  }
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop_front();
    std::size_t v = x / d.layers, l = x % d.layers;
    auto relax = [&](std::size_t y) {
      if (dist[y] == kInfiniteDistance) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
    };
    Mask nb = adj[l * d.n + v] & nodes;
    for (std::size_t w = 0; w < d.n; ++w)
      if (nb >> w & 1) relax(w * d.layers + l);
    for (std::size_t l2 = 0; l2 < d.layers; ++l2)
      if (l2 != l) relax(v * d.layers + l2);
  }
  std::vector<Distance> per_node(d.n, kInfiniteDistance);
  for (std::size_t v = 0; v < d.n; ++v)
    if (nodes >> v & 1)
      for (std::size_t l = 0; l < d.layers; ++l) per_node[v] = std::min(per_node[v], dist[v * d.layers + l]);
  return per_node;
}

std::vector<Mask> restricted_adj(const Dense& d, const SchemaSet* schemas) {
  if (!schemas) return d.adj;
  std::vector<bool> alive(d.su.size());
  for (std::size_t s = 0; s < alive.size(); ++s) alive[s] = schemas->contains(static_cast<SchemaId>(s));
  return live_adjacency(d, alive);
}

Distance diameter_of(const Dense& d, const std::vector<Mask>& adj, Mask nodes) {
  Distance best = 0;
  for (std::size_t v = 0; v < d.n; ++v) {
    if (!(nodes >> v & 1)) continue;
    auto dist = bfs_supra(d, adj, nodes, static_cast<NodeId>(v));
    for (std::size_t w = 0; w < d.n; ++w)
      if (nodes >> w & 1) best = std::max(best, dist[w]);
  }
  return best;
}

bool connected(const std::vector<Mask>& adj, const Dense& d, Mask nodes) {
  if (nodes == 0) return false;
  Mask seen = nodes & (~nodes + 1);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t v = 0; v < d.n; ++v) {
      if (!(seen >> v & 1)) continue;
      Mask add = 0;
      for (std::size_t l = 0; l < d.layers; ++l) add |= adj[l * d.n + v];
      add &= nodes & ~seen;
      if (add) {
        seen |= add;
        grew = true;
      }
    }
  }
  return seen == nodes;
}

// Every vertex set holding Q, smallest first.
std::vector<Mask> supersets(std::size_t n, Mask q) {
  std::vector<Mask> all;
  Mask rest = (n == 64 ? ~Mask{0} : (Mask{1} << n) - 1) & ~q;
  for (Mask sub = rest;; sub = (sub - 1) & rest) {
    if (sub | q) all.push_back(sub | q);
    if (sub == 0) break;
  }
  std::stable_sort(all.begin(), all.end(),
                   [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
  return all;
}

// Feasible sets: the structure inside G[H] spans H, is connected and holds Q.
template <class Visit>
void for_each_feasible(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                       std::span<const NodeId> query, Structure st, const OracleBudget& budget,
                       Visit visit) {
  check_budget(g, budget);
  check_params(k, lambda, g.num_layers(), st);
  Dense d = densify(g);
  Clock clock(budget.timeout_seconds);
  Mask q = 0;
  for (NodeId v : query) {
    if (v >= d.n) throw std::domain_error("query node out of range");
    q |= Mask{1} << v;
  }
  for (Mask h : supersets(d.n, q)) {
    clock.check();
    Fix f = fixpoint(d, k, lambda, st, h, nullptr);
    if (f.nodes != h) continue;
    auto adj = live_adjacency(d, f.schemas);
    if (!connected(adj, d, h)) continue;
    visit(d, h, adj);
  }
}

double mean(std::vector<double> xs, double p) {
  if (std::isinf(p)) return p > 0 ? *std::max_element(xs.begin(), xs.end())
                                  : *std::min_element(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  if (p <= 0)
    for (double x : xs)
      if (x <= 0) return 0;
  if (p == 0) {
    double prod_log = 0;
    for (double x : xs) prod_log += std::log(x);
    return std::exp(prod_log / n);
  }
  double s = 0;
  for (double x : xs) s += std::pow(x, p);
  return std::pow(s / n, 1 / p);
}

}  // namespace

BruteSubgraph brute_firm_subgraph(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                                  Structure structure, const OracleBudget& budget,
                                  std::optional<std::uint64_t> order_seed,
                                  const VertexSubset* within) {
  check_budget(g, budget);
  check_params(k, lambda, g.num_layers(), structure);
  Dense d = densify(g);
  Mask all = d.n == 64 ? ~Mask{0} : (Mask{1} << d.n) - 1;
  Mask start = within ? to_mask(*within) : all;
  std::optional<std::mt19937_64> rng;
  if (order_seed) rng.emplace(*order_seed);
  return to_result(g, d, fixpoint(d, k, lambda, structure, start, rng ? &*rng : nullptr));
}

BruteSubgraph enumerate_firm_subgraph(const MultilayerGraph& g, std::uint32_t k,
                                      std::uint32_t lambda, Structure structure) {
  check_params(k, lambda, g.num_layers(), structure);
  Dense d = densify(g);
  Fix out;
  if (structure == Structure::kFirmCore) {
    if (d.n > 16) throw BudgetExceeded("vertex enumeration is limited to 16 nodes");
    for (Mask h = 1; h < (Mask{1} << d.n); ++h) {
      bool ok = true;
      for (std::size_t v = 0; v < d.n && ok; ++v)
        if (h >> v & 1) ok = core_ok(d, h, static_cast<NodeId>(v), k, lambda);
      if (ok) out.nodes |= h;
    }
    out.schemas.assign(d.su.size(), false);
    for (std::size_t s = 0; s < d.su.size(); ++s)
      out.schemas[s] = (out.nodes >> d.su[s] & 1) && (out.nodes >> d.sv[s] & 1);
    return to_result(g, d, out);
  }
  const std::size_t m = d.su.size();
  if (m > 20) throw BudgetExceeded("schema enumeration is limited to 20 schemas");
  out.schemas.assign(m, false);
  std::vector<bool> alive(m);
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << m); ++sub) {
    for (std::size_t s = 0; s < m; ++s) alive[s] = sub >> s & 1;
    auto a = live_adjacency(d, alive);
    bool ok = true;
    for (std::size_t s = 0; s < m && ok; ++s)
      if (alive[s]) ok = truss_ok(d, a, s, k, lambda);
    if (!ok) continue;
    for (std::size_t s = 0; s < m; ++s)
      if (alive[s]) {
        out.schemas[s] = true;
        out.nodes |= (Mask{1} << d.su[s]) | (Mask{1} << d.sv[s]);
      }
  }
  return to_result(g, d, out);
}

std::optional<Optimum> brute_min_diameter_community(const MultilayerGraph& g, std::uint32_t k,
                                                    std::uint32_t lambda,
                                                    std::span<const NodeId> query,
                                                    Structure structure,
                                                    const OracleBudget& budget) {
  std::optional<Optimum> best;
  for_each_feasible(g, k, lambda, query, structure, budget,
                    [&](const Dense& d, Mask h, const std::vector<Mask>& adj) {
                      double diam = diameter_of(d, adj, h);
                      if (!best || diam < best->value) {
                        best = Optimum{diam, {}};
                      }
                      if (diam == best->value) best->optima.push_back(from_mask(d.n, h));
                    });
  return best;
}

double naive_homophily(const HomophilyContext& ctx, std::span<const NodeId> s) {
  std::vector<double> agg;
  for (NodeId v : s) {
    double sum = 0;
    for (NodeId u : s)
      if (u != v) sum += ctx.h(v, u);
    agg.push_back(sum);
  }
  return mean(agg, ctx.p());
}

std::optional<Optimum> brute_max_homophily(const MultilayerGraph& g, const HomophilyContext& ctx,
                                           std::uint32_t k, std::uint32_t lambda,
                                           std::span<const NodeId> query,
                                           const OracleBudget& budget) {
  std::optional<Optimum> best;
  for_each_feasible(g, k, lambda, query, Structure::kFirmTruss, budget,
                    [&](const Dense& d, Mask h, const std::vector<Mask>&) {
                      std::vector<NodeId> members;
                      for (std::size_t v = 0; v < d.n; ++v)
                        if (h >> v & 1) members.push_back(static_cast<NodeId>(v));
                      double score = naive_homophily(ctx, members);
                      double tol = 1e-12 * std::max(1.0, std::abs(score));
                      if (!best || score > best->value + tol) best = Optimum{score, {}};
                      if (std::abs(score - best->value) <= tol)
                        best->optima.push_back(from_mask(d.n, h));
                    });
  return best;
}

Distance brute_diameter(const MultilayerGraph& g, const VertexSubset& nodes,
                        const SchemaSet* schemas) {
  Dense d = densify(g);
  return diameter_of(d, restricted_adj(d, schemas), to_mask(nodes));
}

std::vector<Distance> supra_distances(const MultilayerGraph& g, const VertexSubset& nodes,
                                      const SchemaSet* schemas) {
  Dense d = densify(g);
  auto adj = restricted_adj(d, schemas);
  Mask m = to_mask(nodes);
  std::vector<Distance> out(d.n * d.n, kInfiniteDistance);
  for (std::size_t v = 0; v < d.n; ++v) {
    if (!(m >> v & 1)) continue;
    auto row = bfs_supra(d, adj, m, static_cast<NodeId>(v));
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(v * d.n));
  }
  return out;
}

std::uint64_t min_intra_layer_cut(const MultilayerGraph& g, const VertexSubset& nodes,
                                  const SchemaSet* schemas, const OracleBudget& budget) {
  if (nodes.size() > budget.max_nodes) throw BudgetExceeded("too many nodes for the cut oracle");
  auto ids = nodes.members();
  const std::size_t n = ids.size();
  if (n < 2) return 0;
  std::vector<std::int64_t> index(g.num_nodes(), -1);
  for (std::size_t i = 0; i < n; ++i) index[ids[i]] = static_cast<std::int64_t>(i);
  std::vector<std::int64_t> cap(n * n, 0);
  for (SchemaId s = 0; s < g.num_schemas(); ++s) {
    if (schemas && !schemas->contains(s)) continue;
    auto [u, v] = g.schema(s);
    if (index[u] < 0 || index[v] < 0) continue;
    auto c = static_cast<std::int64_t>(g.schema_layers(s).size());
    cap[index[u] * n + index[v]] += c;
    cap[index[v] * n + index[u]] += c;
  }
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t t = 1; t < n; ++t) {
    // Edmonds-Karp from 0 to t.
    std::vector<std::int64_t> r = cap;
    std::uint64_t flow = 0;
    for (;;) {
      std::vector<std::int64_t> parent(n, -1);
      parent[0] = 0;
      std::deque<std::size_t> q{0};
      while (!q.empty() && parent[t] < 0) {
        std::size_t x = q.front();
        q.pop_front();
        for (std::size_t y = 0; y < n; ++y)
          if (parent[y] < 0 && r[x * n + y] > 0) {
            parent[y] = static_cast<std::int64_t>(x);
            q.push_back(y);
          }
      }
      if (parent[t] < 0) break;
      std::int64_t push = std::numeric_limits<std::int64_t>::max();
      for (std::size_t y = t; y != 0; y = static_cast<std::size_t>(parent[y]))
        push = std::min(push, r[static_cast<std::size_t>(parent[y]) * n + y]);
      for (std::size_t y = t; y != 0; y = static_cast<std::size_t>(parent[y])) {
        auto x = static_cast<std::size_t>(parent[y]);
        r[x * n + y] -= push;
        r[y * n + x] += push;
      }
      flow += static_cast<std::uint64_t>(push);
    }
    best = std::min(best, flow);
  }
  return best;
}

}  // namespace firmml::oracle
