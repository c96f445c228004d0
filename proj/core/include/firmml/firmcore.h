#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "firmml/distance.h"
#include "firmml/graph.h"
#include "firmml/skyline.h"
#include "firmml/types.h"

namespace firmml {

// Boolean node property evaluated per layer on a subgraph.
struct NodeProperty {
  std::function<bool(const SubgraphView&, NodeId, LayerId)> eval;
  bool monotone = true;
};

NodeProperty degree_at_least(std::uint32_t k);

// Number of layers in which f holds for v.
std::uint32_t property_support(const SubgraphView& view, const NodeProperty& f, NodeId v);

struct PropertyThreshold {
  NodeProperty property;
  std::uint32_t lambda;
};

// Largest node set in which every node meets every threshold, by repeated
// removal of violators.
VertexSubset firm_fixpoint(const MultilayerGraph& g, std::span<const PropertyThreshold> properties);
VertexSubset firm_fixpoint(const MultilayerGraph& g, std::span<const PropertyThreshold> properties,
                           VertexSubset start);

// Peeling state for the (k, λ)-FirmCore: every node keeps Top-λ degree >= k.
class FirmCorePeeler {
 public:
  FirmCorePeeler(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                 const VertexSubset* within = nullptr,
                 std::optional<std::uint64_t> shuffle_seed = std::nullopt);

  // Deletes the nodes, then peels to the fixpoint again.
  void remove_vertices(std::span<const NodeId> nodes);

  const VertexSubset& nodes() const { return alive_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t lambda() const { return lambda_; }

 private:
  void enqueue(NodeId v);
  void drop(NodeId v);
  void peel();
  std::uint32_t compute_top(NodeId v) const;

  const MultilayerGraph* g_;
  std::uint32_t k_;
  std::uint32_t lambda_;
  VertexSubset alive_;
  std::vector<std::uint32_t> deg_;  // v * |L| + l
  std::vector<std::uint32_t> top_;
  std::vector<NodeId> queue_;
  std::vector<bool> queued_;
  std::optional<std::mt19937_64> rng_;
};

// Component of the (k, λ)-FirmCore containing Q. Throws NoCommunity.
VertexSubset maximal_firmcore(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                              std::span<const NodeId> query);

// Whole (k, λ)-FirmCore, possibly empty.
VertexSubset firmcore(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                      const VertexSubset* within = nullptr);

struct SkylineCoreness {
  GraphFingerprint fingerprint;
  std::uint32_t num_layers = 0;
  std::vector<std::vector<SkylinePair>> pairs;  // per node
};

SkylineCoreness firmcore_decomposition(const MultilayerGraph& g);

VertexSubset index_maximal_firmcore(const MultilayerGraph& g, const SkylineCoreness& index,
                                    std::uint32_t k, std::uint32_t lambda,
                                    std::span<const NodeId> query);

// Nodes whose skyline covers (k, λ).
VertexSubset firmcore_members(const MultilayerGraph& g, const SkylineCoreness& index,
                              std::uint32_t k, std::uint32_t lambda);

void coreness_write(const SkylineCoreness& index, const std::filesystem::path& path);
SkylineCoreness coreness_read(const std::filesystem::path& path);
std::string coreness_to_json(const MultilayerGraph& g, const SkylineCoreness& index);

}  // namespace firmml
