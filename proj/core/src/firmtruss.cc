#include "firmml/firmtruss.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "firmml/errors.h"
#include "firmml/firmcore.h"
#include "firmml/parallel.h"

namespace firmml {

namespace {

void check_params(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda) {
  if (k < 2) throw std::domain_error("FirmTruss requires k >= 2");
  if (lambda < 1 || lambda > g.num_layers()) throw std::domain_error("lambda out of range");
}

// Calls f(slot of (u,w), slot of (v,w)) for every common neighbor w of u and v
// in layer l. Both neighbor lists are sorted.
template <class F>
void for_each_wedge(const MultilayerGraph& g, LayerId l, NodeId u, NodeId v, F&& f) {
  auto nu = g.neighbors(l, u);
  auto su = g.neighbor_slots(l, u);
  auto nv = g.neighbors(l, v);
  auto sv = g.neighbor_slots(l, v);
  std::size_t i = 0, j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nv[j] < nu[i]) {
      ++j;
    } else {
      f(su[i], sv[j]);
      ++i;
      ++j;
    }
  }
}

void count_layer(const SubgraphView& view, LayerId l, SupportTable& sup) {
  const auto& g = view.graph();
  const std::size_t n = g.num_nodes();
  auto lower = [&](NodeId a, NodeId b) {
    auto da = g.degree(l, a), db = g.degree(l, b);
    return da != db ? da < db : a < b;
  };
  // Orient every live edge from lower to higher (degree, id) rank.
  std::vector<std::size_t> off(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (!view.has_node(v)) continue;
    view.for_each_neighbor(l, v, [&](NodeId w, SlotId) {
      if (lower(v, w)) ++off[v + 1];
    });
  }
  for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
  std::vector<NodeId> out(off[n]);
  std::vector<SlotId> out_slot(off[n]);
  {
    std::vector<std::size_t> fill(off.begin(), off.end() - 1);
    for (NodeId v = 0; v < n; ++v) {
      if (!view.has_node(v)) continue;
      view.for_each_neighbor(l, v, [&](NodeId w, SlotId e) {
        if (lower(v, w)) {
          out[fill[v]] = w;
          out_slot[fill[v]++] = e;
        }
      });
    }
  }
  constexpr SlotId kNone = static_cast<SlotId>(-1);
  std::vector<SlotId> mark(n, kNone);
  for (NodeId u = 0; u < n; ++u) {
    if (off[u] == off[u + 1]) continue;
    for (std::size_t i = off[u]; i < off[u + 1]; ++i) mark[out[i]] = out_slot[i];
    for (std::size_t i = off[u]; i < off[u + 1]; ++i) {
      NodeId v = out[i];
      SlotId uv = out_slot[i];
      for (std::size_t j = off[v]; j < off[v + 1]; ++j) {
        SlotId uw = mark[out[j]];
        if (uw == kNone) continue;
        ++sup[uv];
        ++sup[out_slot[j]];
        ++sup[uw];
      }
    }
    for (std::size_t i = off[u]; i < off[u + 1]; ++i) mark[out[i]] = kNone;
  }
}

}  // namespace

SupportTable layer_supports(const SubgraphView& view) {
  const auto& g = view.graph();
  SupportTable sup(g.num_edges(), 0);
  const std::size_t num_layers = g.num_layers();
  const std::size_t workers = std::min(thread_budget(), num_layers);
  if (workers <= 1) {
    for (LayerId l = 0; l < num_layers; ++l) count_layer(view, l, sup);
    return sup;
  }
  // Layers own disjoint slots, so threads never write the same entry.
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t l; (l = next.fetch_add(1)) < num_layers;)
        count_layer(view, static_cast<LayerId>(l), sup);
    });
  }
  for (auto& th : pool) th.join();
  return sup;
}

std::int64_t top_lambda_support(const MultilayerGraph& g, const SupportTable& supports,
                                SchemaId s, std::uint32_t lambda) {
  const SlotId begin = g.first_slot(s), end = g.end_slot(s);
  if (end - begin < lambda) return -1;
  std::uint32_t buf[64];
  std::vector<std::uint32_t> heap;
  std::uint32_t* vals = buf;
  if (end - begin > 64) {
    heap.resize(end - begin);
    vals = heap.data();
  }
  std::copy(supports.begin() + begin, supports.begin() + end, vals);
  std::nth_element(vals, vals + (lambda - 1), vals + (end - begin), std::greater<>());
  return vals[lambda - 1];
}

FirmTrussPeeler::FirmTrussPeeler(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                                 const VertexSubset* within, const SchemaSet* allowed,
                                 std::optional<std::uint64_t> shuffle_seed)
    : g_(&g), k_(k), lambda_(lambda) {
  check_params(g, k, lambda);
  const std::size_t num_schemas = g.num_schemas();
  alive_ = SchemaSet(num_schemas);
  nodes_ = VertexSubset(g.num_nodes());
  node_schemas_.assign(g.num_nodes(), 0);
  for (SchemaId s = 0; s < num_schemas; ++s) {
    auto [u, v] = g.schema(s);
    if (within && !(within->contains(u) && within->contains(v))) continue;
    if (allowed && !allowed->contains(s)) continue;
    alive_.insert(s);
    nodes_.insert(u);
    nodes_.insert(v);
    ++node_schemas_[u];
    ++node_schemas_[v];
  }
  support_ = layer_supports(SubgraphView(g, nodes_, &alive_));
  top_.assign(num_schemas, -1);
  queued_.assign(num_schemas, false);
  if (shuffle_seed) rng_.emplace(*shuffle_seed);
  for (SchemaId s = 0; s < num_schemas; ++s) {
    if (!alive_.contains(s)) continue;
    top_[s] = top_lambda_support(g, support_, s, lambda_);
    if (violates(s)) enqueue(s);
  }
  peel();
}

void FirmTrussPeeler::enqueue(SchemaId s) {
  if (queued_[s]) return;
  queued_[s] = true;
  queue_.push_back(s);
}

void FirmTrussPeeler::decrement(SlotId e) {
  SchemaId s = g_->slot_schema(e);
  std::uint32_t old = support_[e]--;
  if (queued_[s]) return;
  // Only a layer whose support equals the Top-λ value can lower it.
  if (old != top_[s]) return;
  top_[s] = top_lambda_support(*g_, support_, s, lambda_);
  if (violates(s)) enqueue(s);
}

void FirmTrussPeeler::drop(SchemaId s) {
  if (!alive_.contains(s)) return;
  auto [u, v] = g_->schema(s);
  for (SlotId e = g_->first_slot(s); e < g_->end_slot(s); ++e) {
    for_each_wedge(*g_, g_->slot_layer(e), u, v, [&](SlotId uw, SlotId vw) {
      if (!alive_.contains(g_->slot_schema(uw)) || !alive_.contains(g_->slot_schema(vw))) return;
      decrement(uw);
      decrement(vw);
    });
  }
  alive_.erase(s);
  if (--node_schemas_[u] == 0) nodes_.erase(u);
  if (--node_schemas_[v] == 0) nodes_.erase(v);
}

void FirmTrussPeeler::peel() {
  while (!queue_.empty()) {
    if (rng_) {
      std::uniform_int_distribution<std::size_t> pick(0, queue_.size() - 1);
      std::swap(queue_[pick(*rng_)], queue_.back());
    }
    SchemaId s = queue_.back();
    queue_.pop_back();
    drop(s);
  }
}

void FirmTrussPeeler::remove_vertices(std::span<const NodeId> nodes) {
  for (NodeId v : nodes) {
    auto sc = g_->union_schemas(v);
    for (SchemaId s : sc) drop(s);
  }
  peel();
}

void FirmTrussPeeler::remove_schemas(std::span<const SchemaId> schemas) {
  for (SchemaId s : schemas) drop(s);
  peel();
}

void maintain_firmtruss(FirmTrussPeeler& state, std::span<const NodeId> deleted) {
  state.remove_vertices(deleted);
}

FirmTruss firmtruss(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                    const VertexSubset* within) {
  check_params(g, k, lambda);
  // A (k, λ)-FirmTruss lies inside the (k-1, λ)-FirmCore.
  FirmCorePeeler core(g, k - 1, lambda, within);
  return FirmTrussPeeler(g, k, lambda, &core.nodes()).result();
}

std::optional<FirmTruss> truss_component(const MultilayerGraph& g, const FirmTruss& t,
                                         std::span<const NodeId> query) {
  auto comp = connected_component(SubgraphView(g, t.nodes, &t.schemas), query);
  if (!comp) return std::nullopt;
  FirmTruss out{std::move(*comp), SchemaSet(g.num_schemas())};
  for (SchemaId s : t.schemas.members())
    if (out.nodes.contains(g.schema(s).u)) out.schemas.insert(s);
  return out;
}

FirmTruss maximal_firmtruss(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                            std::span<const NodeId> query) {
  if (query.empty()) throw std::domain_error("empty query");
  auto whole = firmtruss(g, k, lambda);
  auto comp = truss_component(g, whole, query);
  if (!comp) throw NoCommunity("query nodes are not in one connected FirmTruss");
  return std::move(*comp);
}

SkylineIndex firmtruss_decomposition(const MultilayerGraph& g) {
  const std::size_t num_schemas = g.num_schemas();
  const std::size_t num_layers = g.num_layers();
  SkylineIndex out;
  out.fingerprint = g.fingerprint();
  out.num_layers = static_cast<std::uint32_t>(num_layers);
  out.num_nodes = static_cast<std::uint32_t>(g.num_nodes());
  out.schemas.resize(num_schemas);
  for (SchemaId s = 0; s < num_schemas; ++s) out.schemas[s] = g.schema(s);
  out.pairs.assign(num_schemas, {});
  if (num_schemas == 0) return out;

  VertexSubset all(g.num_nodes(), true);
  const SupportTable initial = layer_supports(SubgraphView(g, all));

  std::vector<std::uint32_t> levels(num_schemas * num_layers, 0);  // s * |L| + (λ - 1)
  SupportTable sup;
  std::vector<std::int64_t> index(num_schemas);
  std::vector<bool> removed(num_schemas);

  for (std::uint32_t lambda = 1; lambda <= num_layers; ++lambda) {
    sup = initial;
    std::fill(removed.begin(), removed.end(), false);
    std::int64_t max_index = 1;
    for (SchemaId s = 0; s < num_schemas; ++s) {
      // Schemas in fewer than λ layers get index 1 and leave first, unrecorded.
      index[s] = top_lambda_support(g, sup, s, lambda) + 2;
      max_index = std::max(max_index, index[s]);
    }
    std::vector<std::vector<SchemaId>> buckets(static_cast<std::size_t>(max_index) + 1);
    for (SchemaId s = static_cast<SchemaId>(num_schemas); s-- > 0;)
      buckets[static_cast<std::size_t>(index[s])].push_back(s);

    for (std::int64_t k = 1; k <= max_index; ++k) {
      auto& bucket = buckets[static_cast<std::size_t>(k)];
      while (!bucket.empty()) {
        SchemaId s = bucket.back();
        bucket.pop_back();
        if (removed[s] || index[s] != k) continue;
        if (k >= 2) levels[s * num_layers + (lambda - 1)] = static_cast<std::uint32_t>(k);
        auto [u, v] = g.schema(s);
        auto lower = [&](SlotId e) {
          SchemaId t = g.slot_schema(e);
          if (index[t] <= k) return;
          std::uint32_t old = sup[e]--;
          if (static_cast<std::int64_t>(old) + 2 != index[t]) return;
          std::int64_t next = std::max(k, top_lambda_support(g, sup, t, lambda) + 2);
          if (next != index[t]) {
            index[t] = next;
            buckets[static_cast<std::size_t>(next)].push_back(t);
          }
        };
        for (SlotId e = g.first_slot(s); e < g.end_slot(s); ++e) {
          for_each_wedge(g, g.slot_layer(e), u, v, [&](SlotId uw, SlotId vw) {
            if (removed[g.slot_schema(uw)] || removed[g.slot_schema(vw)]) return;
            lower(uw);
            lower(vw);
          });
        }
        removed[s] = true;
      }
    }
  }
  for (SchemaId s = 0; s < num_schemas; ++s)
    out.pairs[s] = skyline_from_levels(
        std::span<const std::uint32_t>(levels.data() + s * num_layers, num_layers), 2);
  return out;
}

SchemaSet firmtruss_members(const MultilayerGraph& g, const SkylineIndex& index, std::uint32_t k,
                            std::uint32_t lambda) {
  if (!(index.fingerprint == g.fingerprint()) || index.pairs.size() != g.num_schemas())
    throw IndexMismatch("FirmTruss index does not match the graph");
  check_params(g, k, lambda);
  SchemaSet members(g.num_schemas());
  for (SchemaId s = 0; s < g.num_schemas(); ++s)
    if (covers(index.pairs[s], k, lambda)) members.insert(s);
  return members;
}

FirmTruss index_maximal_firmtruss(const MultilayerGraph& g, const SkylineIndex& index,
                                  std::uint32_t k, std::uint32_t lambda,
                                  std::span<const NodeId> query) {
  if (query.empty()) throw std::domain_error("empty query");
  FirmTruss whole{VertexSubset(g.num_nodes()), firmtruss_members(g, index, k, lambda)};
  for (SchemaId s : whole.schemas.members()) {
    whole.nodes.insert(g.schema(s).u);
    whole.nodes.insert(g.schema(s).v);
  }
  auto comp = truss_component(g, whole, query);
  if (!comp) throw NoCommunity("query nodes are not in one connected FirmTruss");
  return std::move(*comp);
}

}  // namespace firmml
