#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "firmml/attributed.h"
#include "firmml/graph.h"
#include "firmml/types.h"

// Brute-force references for small graphs. Nothing here uses the peeling,
// bucket or BFS code of the main modules: graphs are copied into per-layer
// adjacency bitmasks and everything is recomputed from the definitions.
namespace firmml::oracle {

struct OracleBudget {
  std::size_t max_nodes = 12;
  std::size_t max_layers = 3;
  double timeout_seconds = 30;
};

struct BruteSubgraph {
  VertexSubset nodes;
  SchemaSet schemas;  // FirmCore: the induced schemas
};

// Maximal (k, λ) structure by deleting one violator at a time. With a seed the
// violator is picked at random, otherwise the lowest id goes first.
BruteSubgraph brute_firm_subgraph(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                                  Structure structure, const OracleBudget& budget = {},
                                  std::optional<std::uint64_t> order_seed = std::nullopt,
                                  const VertexSubset* within = nullptr);

// Same answer by enumeration: the union of every satisfying vertex set
// (FirmCore, n <= 16) or schema set (FirmTruss, at most 20 schemas).
BruteSubgraph enumerate_firm_subgraph(const MultilayerGraph& g, std::uint32_t k,
                                      std::uint32_t lambda, Structure structure);

struct Optimum {
  double value = 0;                    // diameter or homophily score
  std::vector<VertexSubset> optima;    // every vertex set attaining it
};

// Smallest diameter over connected (k, λ) subgraphs holding Q. A vertex set H
// is feasible when the structure computed inside G[H] spans all of H.
std::optional<Optimum> brute_min_diameter_community(const MultilayerGraph& g, std::uint32_t k,
                                                    std::uint32_t lambda,
                                                    std::span<const NodeId> query,
                                                    Structure structure,
                                                    const OracleBudget& budget = {});

// Largest Γ_p over the same feasible FirmTruss sets, within 1e-12.
std::optional<Optimum> brute_max_homophily(const MultilayerGraph& g, const HomophilyContext& ctx,
                                           std::uint32_t k, std::uint32_t lambda,
                                           std::span<const NodeId> query,
                                           const OracleBudget& budget = {});

// Γ_p straight from the definition.
double naive_homophily(const HomophilyContext& ctx, std::span<const NodeId> s);

// Diameter over the explicit supra-graph; schemas restricts the edges.
Distance brute_diameter(const MultilayerGraph& g, const VertexSubset& nodes,
                        const SchemaSet* schemas = nullptr);

// All-pairs supra-graph distances between the nodes of g (n x n, row major).
std::vector<Distance> supra_distances(const MultilayerGraph& g, const VertexSubset& nodes,
                                      const SchemaSet* schemas = nullptr);

// Fewest intra-layer edges whose removal disconnects the nodes, by max-flow
// from a fixed node on the union graph (capacity = number of layers). 0 when
// already disconnected or fewer than two nodes.
std::uint64_t min_intra_layer_cut(const MultilayerGraph& g, const VertexSubset& nodes,
                                  const SchemaSet* schemas = nullptr,
                                  const OracleBudget& budget = {});

}  // namespace firmml::oracle
