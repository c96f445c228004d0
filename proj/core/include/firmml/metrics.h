#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "firmml/distance.h"
#include "firmml/types.h"

namespace firmml {

// max over j of (j-th largest per-layer |E_l[S]| / |S|) * j^β.
double density(const SubgraphView& view, double beta);
double density_from_layer_counts(std::span<const std::size_t> edges_per_layer,
                                 std::size_t num_nodes, double beta);

double density_lower_bound(std::uint32_t k, std::uint32_t lambda, std::size_t num_layers,
                           double beta);

// floor(T * floor((2n - 2) / k)), T = 1 + 1 / floor(|L| / (|L| - λ)), T = 1 when λ = |L|.
std::uint64_t diameter_upper_bound(std::uint32_t k, std::uint32_t lambda, std::size_t num_layers,
                                   std::size_t n);

std::uint64_t edge_connectivity_bound(std::uint32_t k, std::uint32_t lambda);

// Power mean; p = 0 is the geometric mean and ±inf the max / min. For p < 0 a
// zero entry makes the mean 0.
double generalized_mean(std::span<const double> values, double p);

double f1_score(std::span<const NodeId> found, std::span<const NodeId> truth);

}  // namespace firmml
