#pragma once

#include <cstdint>
#include <filesystem>
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

// Triangle count per slot (edge instance), within one layer of the view.
// Slots outside the view are left at 0.
using SupportTable = std::vector<std::uint32_t>;

SupportTable layer_supports(const SubgraphView& view);

// λ-th largest support among the layers where schema s exists, or -1 when s
// exists in fewer than λ layers.
std::int64_t top_lambda_support(const MultilayerGraph& g, const SupportTable& supports,
                                SchemaId s, std::uint32_t lambda);

// A FirmTruss is a set of surviving edge schemas; nodes are their endpoints.
struct FirmTruss {
  VertexSubset nodes;
  SchemaSet schemas;
};

// Peeling state for the (k, λ)-FirmTruss: every surviving schema has support
// >= k - 2 in at least λ of the layers where it exists.
class FirmTrussPeeler {
 public:
  FirmTrussPeeler(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                  const VertexSubset* within = nullptr, const SchemaSet* allowed = nullptr,
                  std::optional<std::uint64_t> shuffle_seed = std::nullopt);

  // Deletes every schema touching the nodes, then peels to the fixpoint again.
  void remove_vertices(std::span<const NodeId> nodes);
  void remove_schemas(std::span<const SchemaId> schemas);

  const SchemaSet& schemas() const { return alive_; }
  const VertexSubset& nodes() const { return nodes_; }
  FirmTruss result() const { return {nodes_, alive_}; }
  std::uint32_t k() const { return k_; }
  std::uint32_t lambda() const { return lambda_; }

 private:
  void enqueue(SchemaId s);
  void drop(SchemaId s);
  void decrement(SlotId e);
  void peel();
  bool violates(SchemaId s) const { return top_[s] + 2 < static_cast<std::int64_t>(k_); }

  const MultilayerGraph* g_;
  std::uint32_t k_;
  std::uint32_t lambda_;
  SchemaSet alive_;
  VertexSubset nodes_;
  std::vector<std::uint32_t> node_schemas_;  // live schemas per node
  SupportTable support_;
  std::vector<std::int64_t> top_;
  std::vector<SchemaId> queue_;
  std::vector<bool> queued_;
  std::optional<std::mt19937_64> rng_;
};

void maintain_firmtruss(FirmTrussPeeler& state, std::span<const NodeId> deleted);

// Whole (k, λ)-FirmTruss, possibly empty; prefiltered by the (k-1, λ)-FirmCore.
FirmTruss firmtruss(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                    const VertexSubset* within = nullptr);

// Component containing Q of the (k, λ)-FirmTruss. Throws NoCommunity.
FirmTruss maximal_firmtruss(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                            std::span<const NodeId> query);

// Restricts a FirmTruss to the union component containing Q; nullopt if Q is
// missing or split.
std::optional<FirmTruss> truss_component(const MultilayerGraph& g, const FirmTruss& t,
                                         std::span<const NodeId> query);

struct SkylineIndex {
  GraphFingerprint fingerprint;
  std::uint32_t num_layers = 0;
  std::uint32_t num_nodes = 0;
  std::vector<EdgeSchema> schemas;
  std::vector<std::vector<SkylinePair>> pairs;  // per schema
};

SkylineIndex firmtruss_decomposition(const MultilayerGraph& g);

FirmTruss index_maximal_firmtruss(const MultilayerGraph& g, const SkylineIndex& index,
                                  std::uint32_t k, std::uint32_t lambda,
                                  std::span<const NodeId> query);

// Schemas whose skyline covers (k, λ); throws IndexMismatch on a stale index.
SchemaSet firmtruss_members(const MultilayerGraph& g, const SkylineIndex& index, std::uint32_t k,
                            std::uint32_t lambda);

void index_write(const SkylineIndex& index, const std::filesystem::path& path);
SkylineIndex index_read(const std::filesystem::path& path);
std::string index_to_json(const MultilayerGraph& g, const SkylineIndex& index);

}  // namespace firmml
