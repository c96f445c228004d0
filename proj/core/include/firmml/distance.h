#pragma once

#include <optional>
#include <span>
#include <vector>

#include "firmml/graph.h"
#include "firmml/types.h"

namespace firmml {

// Read-only restriction of a graph to a node set and, optionally, to a set of
// surviving edge schemas. Without a schema set the view is the induced subgraph.
// The view borrows its sets; they must outlive it.
class SubgraphView {
 public:
  SubgraphView(const MultilayerGraph& g, const VertexSubset& nodes,
               const SchemaSet* schemas = nullptr)
      : g_(&g), nodes_(&nodes), schemas_(schemas) {}

  const MultilayerGraph& graph() const { return *g_; }
  const VertexSubset& nodes() const { return *nodes_; }
  const SchemaSet* schemas() const { return schemas_; }

  bool has_node(NodeId v) const { return nodes_->contains(v); }
  bool has_schema(SchemaId s) const {
    auto [u, v] = g_->schema(s);
    return nodes_->contains(u) && nodes_->contains(v) && (!schemas_ || schemas_->contains(s));
  }

  // f(neighbor, slot) for every live edge of v in layer l.
  template <class F>
  void for_each_neighbor(LayerId l, NodeId v, F&& f) const {
    auto nb = g_->neighbors(l, v);
    auto sl = g_->neighbor_slots(l, v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!nodes_->contains(nb[i])) continue;
      if (schemas_ && !schemas_->contains(g_->slot_schema(sl[i]))) continue;
      f(nb[i], sl[i]);
    }
  }

  // f(neighbor, schema) over the union of layers.
  template <class F>
  void for_each_union_neighbor(NodeId v, F&& f) const {
    auto nb = g_->union_neighbors(v);
    auto sc = g_->union_schemas(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!nodes_->contains(nb[i])) continue;
      if (schemas_ && !schemas_->contains(sc[i])) continue;
      f(nb[i], sc[i]);
    }
  }

 private:
  const MultilayerGraph* g_;
  const VertexSubset* nodes_;
  const SchemaSet* schemas_;
};

inline SubgraphView induced_subgraph(const MultilayerGraph& g, const VertexSubset& subset) {
  return SubgraphView(g, subset);
}

struct DistanceField {
  std::vector<Distance> dist;  // per node, kInfiniteDistance when not reached
  bool truncated = false;      // some state beyond max_depth was left unexplored
};

// Supra-graph BFS: an intra-layer hop and a layer switch both cost 1; the
// source starts in every layer copy.
DistanceField distances_from(const SubgraphView& view, NodeId src,
                             Distance max_depth = kInfiniteDistance);

Distance ml_distance(const SubgraphView& view, NodeId src, NodeId dst);

// Per node, the maximum distance to any query node.
DistanceField query_distances(const SubgraphView& view, std::span<const NodeId> query,
                              Distance max_depth = kInfiniteDistance);

Distance query_distance(const SubgraphView& view, const VertexSubset& s, const VertexSubset& q);

Distance diameter(const SubgraphView& view);

// Union-reachable component holding all of Q, or nullopt when Q is split.
std::optional<VertexSubset> connected_component(const SubgraphView& view,
                                                std::span<const NodeId> query);
std::optional<VertexSubset> connected_component(const SubgraphView& view, const VertexSubset& query);

bool is_connected(const SubgraphView& view);

}  // namespace firmml
