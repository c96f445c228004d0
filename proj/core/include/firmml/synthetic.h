#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "firmml/graph.h"
#include "firmml/types.h"

namespace firmml {

// One planted community: a clique of `size` nodes repeated on `lambda` layers.
struct PlantParams {
  std::uint32_t k = 3;
  std::uint32_t lambda = 1;
  std::uint32_t size = 4;
};

struct SyntheticParams {
  std::size_t nodes = 100;
  std::size_t layers = 2;
  std::vector<PlantParams> plants;
  double noise = 0;  // expected noise degree per node per layer
  std::uint64_t seed = 1;
  std::size_t attribute_dim = 0;  // 0 = no attributes
};

struct SyntheticGraph {
  MultilayerGraph graph;
  std::vector<std::vector<NodeId>> communities;
  std::optional<AttributeTable> attributes;
};

// Nodes are labelled v0..v{n-1} and layers 1..L. Plants use disjoint node
// sets. Throws ValidationError when a plant cannot be realised.
SyntheticGraph generate_synthetic(const SyntheticParams& params);

void write_ground_truth(const MultilayerGraph& g, const std::vector<std::vector<NodeId>>& communities,
                        std::ostream& out);
void write_attributes(const MultilayerGraph& g, const AttributeTable& attributes, std::ostream& out);

}  // namespace firmml
