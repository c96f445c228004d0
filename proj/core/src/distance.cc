#include "firmml/distance.h"

#include <algorithm>
#include <stdexcept>

namespace firmml {

DistanceField distances_from(const SubgraphView& view, NodeId src, Distance max_depth) {
  const auto& g = view.graph();
  if (!view.has_node(src)) throw std::domain_error("distance source outside subset");
  const std::size_t n = g.num_nodes();
  const std::size_t num_layers = g.num_layers();

  DistanceField out;
  out.dist.assign(n, kInfiniteDistance);
  out.dist[src] = 0;
  if (num_layers == 0) return out;

  // State (v, l) is v * num_layers + l.
  std::vector<Distance> state(n * num_layers, kInfiniteDistance);
  std::vector<std::uint64_t> queue;
  queue.reserve(num_layers);
  for (LayerId l = 0; l < num_layers; ++l) {
    state[src * num_layers + l] = 0;
    queue.push_back(static_cast<std::uint64_t>(src) * num_layers + l);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint64_t s = queue[head];
    const NodeId v = static_cast<NodeId>(s / num_layers);
    const LayerId l = static_cast<LayerId>(s % num_layers);
    const Distance d = state[s];
    auto visit = [&](std::uint64_t t, NodeId w) {
      if (state[t] != kInfiniteDistance) return;
      if (d >= max_depth) {
        out.truncated = true;
        return;
      }
      state[t] = d + 1;
      if (out.dist[w] == kInfiniteDistance) out.dist[w] = d + 1;
      queue.push_back(t);
    };
    view.for_each_neighbor(l, v, [&](NodeId w, SlotId) {
      visit(static_cast<std::uint64_t>(w) * num_layers + l, w);
    });
    for (LayerId m = 0; m < num_layers; ++m) {
      if (m == l || g.degree(m, v) == 0) continue;
      visit(static_cast<std::uint64_t>(v) * num_layers + m, v);
    }
  }
  return out;
}

Distance ml_distance(const SubgraphView& view, NodeId src, NodeId dst) {
  if (!view.has_node(dst)) throw std::domain_error("distance target outside subset");
  if (src == dst) {
    if (!view.has_node(src)) throw std::domain_error("distance source outside subset");
    return 0;
  }
  return distances_from(view, src).dist[dst];
}

DistanceField query_distances(const SubgraphView& view, std::span<const NodeId> query,
                              Distance max_depth) {
  if (query.empty()) throw std::domain_error("query_distance: empty query");
  DistanceField out;
  out.dist.assign(view.graph().num_nodes(), 0);
  for (NodeId q : query) {
    auto f = distances_from(view, q, max_depth);
    out.truncated = out.truncated || f.truncated;
    for (std::size_t v = 0; v < out.dist.size(); ++v) out.dist[v] = std::max(out.dist[v], f.dist[v]);
  }
  return out;
}

Distance query_distance(const SubgraphView& view, const VertexSubset& s, const VertexSubset& q) {
  auto qs = q.members();
  auto f = query_distances(view, qs);
  Distance best = 0;
  for (NodeId v : s.members()) {
    if (!view.has_node(v)) throw std::domain_error("query_distance: node outside subset");
    best = std::max(best, f.dist[v]);
  }
  return best;
}

Distance diameter(const SubgraphView& view) {
  Distance best = 0;
  auto members = view.nodes().members();
  for (NodeId v : members) {
    auto f = distances_from(view, v);
    for (NodeId w : members) best = std::max(best, f.dist[w]);
    if (best == kInfiniteDistance) return best;
  }
  return best;
}

std::optional<VertexSubset> connected_component(const SubgraphView& view,
                                                std::span<const NodeId> query) {
  const auto& g = view.graph();
  VertexSubset comp(g.num_nodes());
  if (query.empty()) return comp;
  for (NodeId q : query)
    if (!view.has_node(q)) return std::nullopt;
  std::vector<NodeId> stack{query[0]};
  comp.insert(query[0]);
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    view.for_each_union_neighbor(v, [&](NodeId w, SchemaId) {
      if (comp.insert(w)) stack.push_back(w);
    });
  }
  for (NodeId q : query)
    if (!comp.contains(q)) return std::nullopt;
  return comp;
}

std::optional<VertexSubset> connected_component(const SubgraphView& view,
                                                const VertexSubset& query) {
  auto q = query.members();
  return connected_component(view, q);
}

bool is_connected(const SubgraphView& view) {
  auto members = view.nodes().members();
  if (members.empty()) return true;
  auto comp = connected_component(view, std::span<const NodeId>(members.data(), 1));
  return comp && comp->size() == members.size();
}

}  // namespace firmml
