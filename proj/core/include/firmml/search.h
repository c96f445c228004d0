#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "firmml/firmcore.h"
#include "firmml/firmtruss.h"
#include "firmml/graph.h"
#include "firmml/types.h"

namespace firmml {

enum class Strategy { kGlobal, kLocal };
enum class DiameterMode { kExact, kBound };

struct SearchParams {
  std::uint32_t k = 2;
  std::uint32_t lambda = 1;
  std::vector<NodeId> query;
  Structure structure = Structure::kFirmTruss;
  Strategy strategy = Strategy::kGlobal;
  bool use_index = false;
  DiameterMode diameter_mode = DiameterMode::kExact;
  // With DiameterMode::kBound, communities above this size report 2 * query distance.
  std::size_t exact_diameter_cap = 2000;
  // Keep every accepted candidate's node set in the trace.
  bool record_history = false;
};

struct SearchTrace {
  std::size_t iterations = 0;
  std::vector<std::pair<Distance, Distance>> bounds;  // (d_min, d_max) per binary step
  std::vector<Distance> probes;                        // target distances tried, in order
  std::vector<VertexSubset> history;                   // accepted candidates, if recorded
  double g0_ms = 0;
  double loop_ms = 0;
};

struct Community {
  VertexSubset nodes;
  std::optional<SchemaSet> schemas;  // surviving edge schemas for FirmTruss results
  Distance query_distance = 0;
  Distance diameter = 0;
  bool diameter_exact = true;
  SearchParams params;
  SearchTrace trace;

  SubgraphView view(const MultilayerGraph& g) const {
    return SubgraphView(g, nodes, schemas ? &*schemas : nullptr);
  }
};

struct SearchIndexes {
  const SkylineIndex* truss = nullptr;
  const SkylineCoreness* core = nullptr;
};

// Minimum-diameter community search. Every driver returns the largest
// community containing Q whose query distance is the minimum feasible one,
// so its diameter is at most twice the optimum. Throws NoCommunity.
Community search_community(const MultilayerGraph& g, const SearchParams& params,
                           const SearchIndexes& indexes = {});

Community ftcs_global(const MultilayerGraph& g, SearchParams params,
                      const SkylineIndex* index = nullptr);
Community ftcs_local(const MultilayerGraph& g, SearchParams params,
                     const SkylineIndex* index = nullptr);
Community fccs_global(const MultilayerGraph& g, SearchParams params,
                      const SkylineCoreness* index = nullptr);
Community fccs_local(const MultilayerGraph& g, SearchParams params,
                     const SkylineCoreness* index = nullptr);

// Definitional re-check of a community; returns a reason when invalid.
std::optional<std::string> validate_community(const MultilayerGraph& g, const Community& c);

}  // namespace firmml
