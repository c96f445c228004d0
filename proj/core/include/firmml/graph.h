#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "firmml/types.h"

namespace firmml {

// Unordered node pair, stored with u < v.
struct EdgeSchema {
  NodeId u;
  NodeId v;
  friend bool operator==(const EdgeSchema&, const EdgeSchema&) = default;
};

struct GraphFingerprint {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t hash = 0;
  friend bool operator==(const GraphFingerprint&, const GraphFingerprint&) = default;
};

// Immutable multilayer graph. Node and layer ids are dense and follow first
// appearance. Every intra-layer edge is one slot; the slots of an edge schema
// are contiguous and ordered by layer.
class MultilayerGraph {
 public:
  class Builder;

  MultilayerGraph() = default;

  std::size_t num_nodes() const { return node_labels_.size(); }
  std::size_t num_layers() const { return layer_labels_.size(); }
  std::size_t num_edges() const { return slot_layers_.size(); }
  std::size_t num_schemas() const { return schemas_.size(); }

  const std::string& node_label(NodeId v) const { return node_labels_[v]; }
  const std::string& layer_label(LayerId l) const { return layer_labels_[l]; }
  std::optional<NodeId> find_node(std::string_view label) const;

  std::span<const NodeId> neighbors(LayerId l, NodeId v) const {
    const auto& off = adj_offsets_[l];
    return {adj_nodes_[l].data() + off[v], off[v + 1] - off[v]};
  }
  // Slot ids aligned with neighbors(l, v).
  std::span<const SlotId> neighbor_slots(LayerId l, NodeId v) const {
    const auto& off = adj_offsets_[l];
    return {adj_slots_[l].data() + off[v], off[v + 1] - off[v]};
  }
  std::size_t degree(LayerId l, NodeId v) const {
    return adj_offsets_[l][v + 1] - adj_offsets_[l][v];
  }

  EdgeSchema schema(SchemaId s) const { return schemas_[s]; }
  SlotId first_slot(SchemaId s) const { return schema_offsets_[s]; }
  SlotId end_slot(SchemaId s) const { return schema_offsets_[s + 1]; }
  std::span<const LayerId> schema_layers(SchemaId s) const {
    return {slot_layers_.data() + schema_offsets_[s], schema_offsets_[s + 1] - schema_offsets_[s]};
  }
  SchemaId slot_schema(SlotId e) const { return slot_schemas_[e]; }
  LayerId slot_layer(SlotId e) const { return slot_layers_[e]; }
  std::optional<SchemaId> find_schema(NodeId u, NodeId v) const;

  // Neighbors over the union of all layers, with the connecting schema.
  std::span<const NodeId> union_neighbors(NodeId v) const {
    return {union_nodes_.data() + union_offsets_[v], union_offsets_[v + 1] - union_offsets_[v]};
  }
  std::span<const SchemaId> union_schemas(NodeId v) const {
    return {union_schemas_.data() + union_offsets_[v], union_offsets_[v + 1] - union_offsets_[v]};
  }

  std::size_t dropped_self_loops() const { return self_loops_; }
  std::size_t merged_duplicates() const { return duplicates_; }
  const GraphFingerprint& fingerprint() const { return fingerprint_; }

 private:
  std::vector<std::string> node_labels_;
  std::vector<std::string> layer_labels_;
  std::unordered_map<std::string, NodeId> node_ids_;

  std::vector<EdgeSchema> schemas_;
  std::vector<SlotId> schema_offsets_;
  std::vector<LayerId> slot_layers_;
  std::vector<SchemaId> slot_schemas_;

  std::vector<std::vector<std::size_t>> adj_offsets_;
  std::vector<std::vector<NodeId>> adj_nodes_;
  std::vector<std::vector<SlotId>> adj_slots_;

  std::vector<std::size_t> union_offsets_;
  std::vector<NodeId> union_nodes_;
  std::vector<SchemaId> union_schemas_;

  std::size_t self_loops_ = 0;
  std::size_t duplicates_ = 0;
  GraphFingerprint fingerprint_;
};

class MultilayerGraph::Builder {
 public:
  NodeId node(std::string_view label);
  LayerId layer(std::string_view label);

  void add_edge(LayerId l, NodeId u, NodeId v);
  void add_edge(std::string_view layer, std::string_view u, std::string_view v);

  MultilayerGraph build();

 private:
  struct RawEdge {
    NodeId u;
    NodeId v;
    LayerId l;
  };
  std::vector<std::string> node_labels_;
  std::vector<std::string> layer_labels_;
  std::unordered_map<std::string, NodeId> node_ids_;
  std::unordered_map<std::string, LayerId> layer_ids_;
  std::vector<RawEdge> edges_;
  std::size_t self_loops_ = 0;
};

// Edge list: one `layer src dst` per line, `#` starts a comment.
MultilayerGraph parse_graph(std::istream& in);
MultilayerGraph parse_graph_text(std::string_view text);
MultilayerGraph load_graph(const std::filesystem::path& path);
void write_edge_list(const MultilayerGraph& g, std::ostream& out);

class AttributeTable {
 public:
  AttributeTable() = default;
  AttributeTable(std::size_t num_nodes, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t num_nodes() const { return has_row_.size(); }
  bool has_row(NodeId v) const { return v < has_row_.size() && has_row_[v]; }
  // Nodes without a row read as the zero vector.
  std::span<const double> operator[](NodeId v) const;
  void set(NodeId v, std::span<const double> values);

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::vector<bool> has_row_;
  std::vector<double> zero_;
};

AttributeTable parse_attributes(std::istream& in, const MultilayerGraph& g);
AttributeTable load_attributes(const std::filesystem::path& path, const MultilayerGraph& g);

// Communities, one per line, as node labels.
std::vector<std::vector<NodeId>> load_ground_truth(const std::filesystem::path& path,
                                                   const MultilayerGraph& g);

using DegreeVector = std::vector<std::uint32_t>;

DegreeVector degree_vector(const MultilayerGraph& g, const VertexSubset& subset, NodeId v);

// λ-th largest entry, ties counted with multiplicity.
std::uint32_t top_lambda(std::span<const std::uint32_t> values, std::size_t lambda);

std::vector<NodeId> resolve_labels(const MultilayerGraph& g, std::span<const std::string> labels);

}  // namespace firmml
