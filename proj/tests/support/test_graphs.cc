#include "test_graphs.h"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace firmml::testing {

MultilayerGraph random_graph(std::size_t n, std::size_t layers, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  MultilayerGraph::Builder b;
  for (std::size_t v = 0; v < n; ++v) b.node("n" + std::to_string(v));
  for (std::size_t l = 0; l < layers; ++l) b.layer("L" + std::to_string(l + 1));
  for (std::size_t l = 0; l < layers; ++l)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (coin(rng)) b.add_edge(static_cast<LayerId>(l), static_cast<NodeId>(u), static_cast<NodeId>(v));
  return b.build();
}

MultilayerGraph identical_cliques(std::size_t size, std::size_t layers) {
  MultilayerGraph::Builder b;
  for (std::size_t v = 0; v < size; ++v) b.node("n" + std::to_string(v));
  for (std::size_t l = 0; l < layers; ++l) b.layer("L" + std::to_string(l + 1));
  for (std::size_t l = 0; l < layers; ++l)
    for (std::size_t u = 0; u < size; ++u)
      for (std::size_t v = u + 1; v < size; ++v)
        b.add_edge(static_cast<LayerId>(l), static_cast<NodeId>(u), static_cast<NodeId>(v));
  return b.build();
}

MultilayerGraph from_edges(const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
  MultilayerGraph::Builder b;
  for (const auto& [l, u, v] : edges) b.add_edge(l, u, v);
  return b.build();
}

VertexSubset all_nodes(const MultilayerGraph& g) { return VertexSubset(g.num_nodes(), true); }

VertexSubset nodes_of(const MultilayerGraph& g, const std::vector<std::string>& labels) {
  VertexSubset s(g.num_nodes());
  for (const auto& l : labels) s.insert(id(g, l));
  return s;
}

NodeId id(const MultilayerGraph& g, const std::string& label) { return *g.find_node(label); }

std::vector<EdgeRecord> edge_records(const MultilayerGraph& g) {
  std::vector<EdgeRecord> out;
  for (SchemaId s = 0; s < g.num_schemas(); ++s)
    for (LayerId l : g.schema_layers(s)) out.push_back({l, g.schema(s).u, g.schema(s).v});
  return out;
}

std::vector<std::uint32_t> naive_degrees(const MultilayerGraph& g, const VertexSubset& s, NodeId v) {
  std::vector<std::uint32_t> d(g.num_layers(), 0);
  for (const auto& e : edge_records(g)) {
    if (!s.contains(e.u) || !s.contains(e.v)) continue;
    if (e.u == v || e.v == v) ++d[e.layer];
  }
  return d;
}

std::uint32_t naive_triangles(const MultilayerGraph& g, const VertexSubset& s, LayerId l, NodeId u,
                              NodeId v) {
  std::set<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : edge_records(g))
    if (e.layer == l && s.contains(e.u) && s.contains(e.v)) edges.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  auto has = [&](NodeId a, NodeId b) { return edges.count({std::min(a, b), std::max(a, b)}) > 0; };
  if (!has(u, v)) return 0;
  std::uint32_t t = 0;
  for (NodeId w = 0; w < g.num_nodes(); ++w)
    if (w != u && w != v && has(u, w) && has(v, w)) ++t;
  return t;
}

std::vector<Distance> naive_supra_apsp(const MultilayerGraph& g, const VertexSubset& s) {
  const std::size_t n = g.num_nodes(), L = g.num_layers();
  std::vector<std::vector<std::size_t>> adj(n * L);
  for (const auto& e : edge_records(g)) {
    if (!s.contains(e.u) || !s.contains(e.v)) continue;
    adj[e.u * L + e.layer].push_back(e.v * L + e.layer);
    adj[e.v * L + e.layer].push_back(e.u * L + e.layer);
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t a = 0; a < L; ++a)
      for (std::size_t b = 0; b < L; ++b)
        if (a != b) adj[v * L + a].push_back(v * L + b);
  std::vector<Distance> out(n * n, kInfiniteDistance);
  for (std::size_t src = 0; src < n; ++src) {
    if (!s.contains(static_cast<NodeId>(src))) continue;
    std::vector<Distance> dist(n * L, kInfiniteDistance);
    std::deque<std::size_t> q;
    for (std::size_t l = 0; l < L; ++l) {
      dist[src * L + l] = 0;
      q.push_back(src * L + l);
    }
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      for (auto y : adj[x])
        if (dist[y] == kInfiniteDistance) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!s.contains(static_cast<NodeId>(v))) continue;
      for (std::size_t l = 0; l < L; ++l) out[src * n + v] = std::min(out[src * n + v], dist[v * L + l]);
      if (L == 0 && v == src) out[src * n + v] = 0;
    }
  }
  return out;
}

}  // namespace firmml::testing
