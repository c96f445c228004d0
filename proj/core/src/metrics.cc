#include "firmml/metrics.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace firmml {

double density_from_layer_counts(std::span<const std::size_t> edges_per_layer,
                                 std::size_t num_nodes, double beta) {
  if (num_nodes == 0) throw std::domain_error("density of an empty set");
  if (beta < 0) throw std::domain_error("beta must be non-negative");
  std::vector<double> per_layer;
  for (auto e : edges_per_layer) per_layer.push_back(static_cast<double>(e) / num_nodes);
  std::sort(per_layer.begin(), per_layer.end(), std::greater<>());
  double best = 0;
  for (std::size_t j = 1; j <= per_layer.size(); ++j)
    best = std::max(best, per_layer[j - 1] * std::pow(static_cast<double>(j), beta));
  return best;
}

double density(const SubgraphView& view, double beta) {
  const auto& g = view.graph();
  std::vector<std::size_t> counts(g.num_layers(), 0);
  for (NodeId v : view.nodes().members())
    for (LayerId l = 0; l < g.num_layers(); ++l)
      view.for_each_neighbor(l, v, [&](NodeId w, SlotId) {
        if (v < w) ++counts[l];
      });
  return density_from_layer_counts(counts, view.nodes().size(), beta);
}

double density_lower_bound(std::uint32_t k, std::uint32_t lambda, std::size_t num_layers,
                           double beta) {
  if (lambda < 1 || lambda > num_layers) throw std::domain_error("lambda out of range");
  double best = 0;
  for (std::uint32_t xi = 0; xi < lambda; ++xi)
    best = std::max(best, (lambda - xi) * std::pow(xi + 1.0, beta));
  return (static_cast<double>(k) - 1.0) / (2.0 * num_layers) * best;
}

std::uint64_t diameter_upper_bound(std::uint32_t k, std::uint32_t lambda, std::size_t num_layers,
                                   std::size_t n) {
  if (k < 2) throw std::domain_error("k must be at least 2");
  if (lambda < 1 || lambda > num_layers) throw std::domain_error("lambda out of range");
  if (n == 0) return 0;
  const std::uint64_t a = (2 * static_cast<std::uint64_t>(n) - 2) / k;
  if (lambda == num_layers) return a;
  const std::uint64_t f = num_layers / (num_layers - lambda);
  // floor(a * (1 + 1/f)) = a + floor(a / f), exact in integers.
  return a + a / f;
}

std::uint64_t edge_connectivity_bound(std::uint32_t k, std::uint32_t lambda) {
  return static_cast<std::uint64_t>(lambda) * (k - 1);
}

double generalized_mean(std::span<const double> values, double p) {
  if (values.empty()) throw std::domain_error("mean of an empty set");
  if (std::isinf(p)) {
    return p > 0 ? *std::max_element(values.begin(), values.end())
                 : *std::min_element(values.begin(), values.end());
  }
  const double n = static_cast<double>(values.size());
  if (p == 0) {
    double log_sum = 0;
    for (double x : values) {
      if (x <= 0) return 0;
      log_sum += std::log(x);
    }
    return std::exp(log_sum / n);
  }
  double sum = 0;
  for (double x : values) {
    if (p < 0 && x <= 0) return 0;
    sum += std::pow(x, p);
  }
  return std::pow(sum / n, 1.0 / p);
}

double f1_score(std::span<const NodeId> found, std::span<const NodeId> truth) {
  if (found.empty() || truth.empty()) return 0;
  std::vector<NodeId> a(found.begin(), found.end()), b(truth.begin(), truth.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<NodeId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.empty()) return 0;
  double pre = static_cast<double>(common.size()) / a.size();
  double rec = static_cast<double>(common.size()) / b.size();
  return 2 * pre * rec / (pre + rec);
}

}  // namespace firmml
