#include "firmml/firmcore.h"

#include <algorithm>
#include <stdexcept>

#include "firmml/errors.h"

namespace firmml {

namespace {

void check_lambda(const MultilayerGraph& g, std::uint32_t lambda) {
  if (lambda < 1 || lambda > g.num_layers()) throw std::domain_error("lambda out of range");
}

std::uint32_t lambda_th(std::vector<std::uint32_t>& scratch, std::uint32_t lambda) {
  std::nth_element(scratch.begin(), scratch.begin() + (lambda - 1), scratch.end(),
                   std::greater<>());
  return scratch[lambda - 1];
}

}  // namespace

std::vector<SkylinePair> skyline_from_levels(std::span<const std::uint32_t> per_lambda,
                                             std::uint32_t min_k) {
  std::vector<SkylinePair> out;
  std::int64_t best = -1;
  for (std::size_t i = per_lambda.size(); i-- > 0;) {
    std::uint32_t k = per_lambda[i];
    if (k < min_k || static_cast<std::int64_t>(k) <= best) continue;
    best = k;
    out.push_back({k, static_cast<std::uint32_t>(i + 1)});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<SkylinePair> skyline_reduce(std::vector<SkylinePair> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const SkylinePair& a, const SkylinePair& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.k > b.k;
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<SkylinePair> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pairs.size() && !dominated; ++j)
      dominated = j != i && dominates(pairs[j], pairs[i]);
    if (!dominated) out.push_back(pairs[i]);
  }
  return out;
}

NodeProperty degree_at_least(std::uint32_t k) {
  return {[k](const SubgraphView& view, NodeId v, LayerId l) {
            std::uint32_t d = 0;
            view.for_each_neighbor(l, v, [&](NodeId, SlotId) { ++d; });
            return d >= k;
          },
          true};
}

std::uint32_t property_support(const SubgraphView& view, const NodeProperty& f, NodeId v) {
  std::uint32_t count = 0;
  for (LayerId l = 0; l < view.graph().num_layers(); ++l)
    if (f.eval(view, v, l)) ++count;
  return count;
}

VertexSubset firm_fixpoint(const MultilayerGraph& g, std::span<const PropertyThreshold> properties,
                           VertexSubset start) {
  VertexSubset current = std::move(start);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<NodeId> violators;
    SubgraphView view(g, current);
    for (NodeId v : current.members()) {
      for (const auto& p : properties) {
        if (property_support(view, p.property, v) < p.lambda) {
          violators.push_back(v);
          break;
        }
      }
    }
    for (NodeId v : violators) current.erase(v);
    changed = !violators.empty();
  }
  return current;
}

VertexSubset firm_fixpoint(const MultilayerGraph& g,
                           std::span<const PropertyThreshold> properties) {
  return firm_fixpoint(g, properties, VertexSubset(g.num_nodes(), true));
}

FirmCorePeeler::FirmCorePeeler(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                               const VertexSubset* within,
                               std::optional<std::uint64_t> shuffle_seed)
    : g_(&g), k_(k), lambda_(lambda) {
  check_lambda(g, lambda);
  const std::size_t n = g.num_nodes();
  const std::size_t num_layers = g.num_layers();
  alive_ = within ? *within : VertexSubset(n, true);
  deg_.assign(n * num_layers, 0);
  top_.assign(n, 0);
  queued_.assign(n, false);
  if (shuffle_seed) rng_.emplace(*shuffle_seed);
  for (NodeId v : alive_.members()) {
    for (LayerId l = 0; l < num_layers; ++l) {
      std::uint32_t d = 0;
      for (NodeId w : g.neighbors(l, v))
        if (alive_.contains(w)) ++d;
      deg_[v * num_layers + l] = d;
    }
    top_[v] = compute_top(v);
    if (top_[v] < k_) enqueue(v);
  }
  peel();
}

std::uint32_t FirmCorePeeler::compute_top(NodeId v) const {
  const std::size_t num_layers = g_->num_layers();
  std::vector<std::uint32_t> row(deg_.begin() + v * num_layers,
                                 deg_.begin() + (v + 1) * num_layers);
  return lambda_th(row, lambda_);
}

void FirmCorePeeler::enqueue(NodeId v) {
  if (queued_[v]) return;
  queued_[v] = true;
  queue_.push_back(v);
}

void FirmCorePeeler::drop(NodeId v) {
  if (!alive_.erase(v)) return;
  const std::size_t num_layers = g_->num_layers();
  for (LayerId l = 0; l < num_layers; ++l) {
    for (NodeId w : g_->neighbors(l, v)) {
      if (!alive_.contains(w)) continue;
      std::uint32_t old = deg_[w * num_layers + l]--;
      // Only a layer that attains the Top-λ value can lower it.
      if (queued_[w] || old != top_[w]) continue;
      top_[w] = compute_top(w);
      if (top_[w] < k_) enqueue(w);
    }
  }
}

void FirmCorePeeler::peel() {
  while (!queue_.empty()) {
    if (rng_) {
      std::uniform_int_distribution<std::size_t> pick(0, queue_.size() - 1);
      std::swap(queue_[pick(*rng_)], queue_.back());
    }
    NodeId v = queue_.back();
    queue_.pop_back();
    drop(v);
  }
}

void FirmCorePeeler::remove_vertices(std::span<const NodeId> nodes) {
  for (NodeId v : nodes) drop(v);
  peel();
}

VertexSubset firmcore(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                      const VertexSubset* within) {
  return FirmCorePeeler(g, k, lambda, within).nodes();
}

VertexSubset maximal_firmcore(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                              std::span<const NodeId> query) {
  if (query.empty()) throw std::domain_error("empty query");
  FirmCorePeeler peeler(g, k, lambda);
  auto comp = connected_component(induced_subgraph(g, peeler.nodes()), query);
  if (!comp) throw NoCommunity("query nodes are not in one connected FirmCore");
  return *comp;
}

SkylineCoreness firmcore_decomposition(const MultilayerGraph& g) {
  const std::size_t n = g.num_nodes();
  const std::size_t num_layers = g.num_layers();
  SkylineCoreness out;
  out.fingerprint = g.fingerprint();
  out.num_layers = static_cast<std::uint32_t>(num_layers);
  out.pairs.assign(n, {});
  if (num_layers == 0) return out;

  std::vector<std::uint32_t> full(n * num_layers);
  for (NodeId v = 0; v < n; ++v)
    for (LayerId l = 0; l < num_layers; ++l)
      full[v * num_layers + l] = static_cast<std::uint32_t>(g.degree(l, v));

  std::vector<std::uint32_t> levels(n * num_layers, 0);  // v * |L| + (λ - 1)
  std::vector<std::uint32_t> deg;
  std::vector<std::uint32_t> index(n);
  std::vector<bool> removed(n);
  std::vector<std::uint32_t> scratch(num_layers);
  auto top_of = [&](NodeId v, std::uint32_t lambda) {
    std::copy(deg.begin() + v * num_layers, deg.begin() + (v + 1) * num_layers, scratch.begin());
    return lambda_th(scratch, lambda);
  };

  for (std::uint32_t lambda = 1; lambda <= num_layers; ++lambda) {
    deg = full;
    std::fill(removed.begin(), removed.end(), false);
    std::uint32_t max_index = 0;
    for (NodeId v = 0; v < n; ++v) {
      index[v] = top_of(v, lambda);
      max_index = std::max(max_index, index[v]);
    }
    std::vector<std::vector<NodeId>> buckets(max_index + 1);
    for (NodeId v = n; v-- > 0;) buckets[index[v]].push_back(v);
    for (std::uint32_t k = 0; k <= max_index; ++k) {
      auto& bucket = buckets[k];
      while (!bucket.empty()) {
        NodeId v = bucket.back();
        bucket.pop_back();
        if (removed[v] || index[v] != k) continue;
        removed[v] = true;
        levels[v * num_layers + (lambda - 1)] = k;
        for (LayerId l = 0; l < num_layers; ++l) {
          for (NodeId w : g.neighbors(l, v)) {
            if (removed[w] || index[w] <= k) continue;
            std::uint32_t old = deg[w * num_layers + l]--;
            if (old != index[w]) continue;
            std::uint32_t next = std::max(k, top_of(w, lambda));
            if (next != index[w]) {
              index[w] = next;
              buckets[next].push_back(w);
            }
          }
        }
      }
    }
  }
  for (NodeId v = 0; v < n; ++v)
    out.pairs[v] = skyline_from_levels(
        std::span<const std::uint32_t>(levels.data() + v * num_layers, num_layers), 0);
  return out;
}

VertexSubset firmcore_members(const MultilayerGraph& g, const SkylineCoreness& index,
                              std::uint32_t k, std::uint32_t lambda) {
  if (!(index.fingerprint == g.fingerprint()) || index.pairs.size() != g.num_nodes())
    throw IndexMismatch("FirmCore index does not match the graph");
  check_lambda(g, lambda);
  VertexSubset members(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (covers(index.pairs[v], k, lambda)) members.insert(v);
  return members;
}

VertexSubset index_maximal_firmcore(const MultilayerGraph& g, const SkylineCoreness& index,
                                    std::uint32_t k, std::uint32_t lambda,
                                    std::span<const NodeId> query) {
  if (query.empty()) throw std::domain_error("empty query");
  auto members = firmcore_members(g, index, k, lambda);
  auto comp = connected_component(induced_subgraph(g, members), query);
  if (!comp) throw NoCommunity("query nodes are not in one connected FirmCore");
  return *comp;
}

}  // namespace firmml
