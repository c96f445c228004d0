#include "firmml/search.h"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "firmml/distance.h"
#include "firmml/errors.h"

namespace firmml {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class TrussCandidate {
 public:
  TrussCandidate(const MultilayerGraph& g, const SearchParams& p, const VertexSubset* within,
                 const SchemaSet* allowed)
      : g_(&g), peeler_(g, p.k, p.lambda, prefilter(g, p, within), allowed) {}

  const VertexSubset& nodes() const { return peeler_.nodes(); }
  SubgraphView view() const { return SubgraphView(*g_, peeler_.nodes(), &peeler_.schemas()); }
  void remove(std::span<const NodeId> nodes) { peeler_.remove_vertices(nodes); }
  std::optional<SchemaSet> schemas() const { return peeler_.schemas(); }

 private:
  // The (k-1, λ)-FirmCore bounds the FirmTruss; peel nodes first.
  const VertexSubset* prefilter(const MultilayerGraph& g, const SearchParams& p,
                                const VertexSubset* within) {
    core_ = FirmCorePeeler(g, p.k - 1, p.lambda, within).nodes();
    return &core_;
  }

  const MultilayerGraph* g_;
  VertexSubset core_;
  FirmTrussPeeler peeler_;
};

class CoreCandidate {
 public:
  CoreCandidate(const MultilayerGraph& g, const SearchParams& p, const VertexSubset* within,
                const SchemaSet*)
      : g_(&g), peeler_(g, p.k, p.lambda, within) {}

  const VertexSubset& nodes() const { return peeler_.nodes(); }
  SubgraphView view() const { return SubgraphView(*g_, peeler_.nodes()); }
  void remove(std::span<const NodeId> nodes) { peeler_.remove_vertices(nodes); }
  std::optional<SchemaSet> schemas() const { return std::nullopt; }

 private:
  const MultilayerGraph* g_;
  FirmCorePeeler peeler_;
};

// Drops everything outside Q's component; false when Q is missing or split.
template <class C>
bool keep_query_component(C& c, std::span<const NodeId> query) {
  for (NodeId q : query)
    if (!c.nodes().contains(q)) return false;
  auto comp = connected_component(c.view(), query);
  if (!comp) return false;
  if (comp->size() != c.nodes().size()) {
    std::vector<NodeId> outside;
    for (NodeId v : c.nodes().members())
      if (!comp->contains(v)) outside.push_back(v);
    c.remove(outside);
  }
  return true;
}

Distance max_query_distance(const SubgraphView& view, std::span<const NodeId> query) {
  auto f = query_distances(view, query);
  Distance best = 0;
  for (NodeId v : view.nodes().members()) best = std::max(best, f.dist[v]);
  return best;
}

// Deletes nodes farther than t from Q until none remain, maintaining the
// structure. The survivor is the largest community with query distance <= t.
template <class C>
std::optional<Distance> shrink_to(C& c, std::span<const NodeId> query, Distance t,
                                  SearchTrace& trace) {
  while (true) {
    if (!keep_query_component(c, query)) return std::nullopt;
    auto f = query_distances(c.view(), query);
    std::vector<NodeId> far;
    Distance qd = 0;
    for (NodeId v : c.nodes().members()) {
      if (f.dist[v] > t)
        far.push_back(v);
      else
        qd = std::max(qd, f.dist[v]);
    }
    ++trace.iterations;
    if (far.empty()) return qd;
    c.remove(far);
  }
}

Distance lower_bound_of(const SearchParams& p) {
  return p.structure == Structure::kFirmCore && p.k == 0 ? 0 : 1;
}

void check_params(const MultilayerGraph& g, const SearchParams& p) {
  if (p.query.empty()) throw std::domain_error("empty query");
  for (NodeId q : p.query)
    if (q >= g.num_nodes()) throw std::domain_error("query node out of range");
  if (p.lambda < 1 || p.lambda > g.num_layers()) throw std::domain_error("lambda out of range");
  if (p.structure == Structure::kFirmTruss && p.k < 2)
    throw std::domain_error("FirmTruss search requires k >= 2");
}

template <class C>
Community finish(const MultilayerGraph& g, const SearchParams& params, const C& c, Distance qd,
                 SearchTrace trace) {
  Community out;
  out.nodes = c.nodes();
  out.schemas = c.schemas();
  out.query_distance = qd;
  out.params = params;
  auto view = out.view(g);
  if (params.diameter_mode == DiameterMode::kExact || out.nodes.size() <= params.exact_diameter_cap) {
    out.diameter = diameter(view);
  } else {
    out.diameter = 2 * qd;
    out.diameter_exact = false;
  }
  out.trace = std::move(trace);
  return out;
}

// Index-derived restriction shared by both drivers.
struct Restriction {
  std::optional<VertexSubset> nodes;
  std::optional<SchemaSet> schemas;
};

Restriction restriction_from(const MultilayerGraph& g, const SearchParams& p,
                             const SearchIndexes& idx) {
  Restriction r;
  if (!p.use_index) return r;
  if (p.structure == Structure::kFirmTruss) {
    if (!idx.truss) throw std::invalid_argument("use_index requires a FirmTruss index");
    r.schemas = firmtruss_members(g, *idx.truss, p.k, p.lambda);
    VertexSubset nodes(g.num_nodes());
    for (SchemaId s : r.schemas->members()) {
      nodes.insert(g.schema(s).u);
      nodes.insert(g.schema(s).v);
    }
    r.nodes = std::move(nodes);
  } else {
    if (!idx.core) throw std::invalid_argument("use_index requires a FirmCore index");
    r.nodes = firmcore_members(g, *idx.core, p.k, p.lambda);
  }
  return r;
}

template <class C>
Community run_global(const MultilayerGraph& g, const SearchParams& params,
                     const SearchIndexes& idx) {
  check_params(g, params);
  auto t0 = Clock::now();
  SearchTrace trace;
  Restriction r = restriction_from(g, params, idx);
  C best(g, params, r.nodes ? &*r.nodes : nullptr, r.schemas ? &*r.schemas : nullptr);
  if (!keep_query_component(best, params.query))
    throw NoCommunity("query nodes are not in one connected community");
  Distance hi = max_query_distance(best.view(), params.query);
  if (hi == kInfiniteDistance) throw std::logic_error("initial community is disconnected");
  trace.g0_ms = ms_since(t0);
  if (params.record_history) trace.history.push_back(best.nodes());

  auto t1 = Clock::now();
  Distance lo = std::min(lower_bound_of(params), hi);
  while (lo < hi) {
    Distance mid = lo + (hi - lo) / 2;
    trace.bounds.emplace_back(lo, hi);
    trace.probes.push_back(mid);
    C trial = best;
    if (auto qd = shrink_to(trial, params.query, mid, trace)) {
      best = std::move(trial);
      hi = *qd;
      if (params.record_history) trace.history.push_back(best.nodes());
    } else {
      lo = mid + 1;
    }
  }
  trace.loop_ms = ms_since(t1);
  return finish(g, params, best, hi, std::move(trace));
}

template <class C>
Community run_local(const MultilayerGraph& g, const SearchParams& params,
                    const SearchIndexes& idx) {
  check_params(g, params);
  auto t0 = Clock::now();
  SearchTrace trace;
  Restriction r = restriction_from(g, params, idx);
  VertexSubset all_nodes;
  if (!r.nodes) all_nodes = VertexSubset(g.num_nodes(), true);
  const VertexSubset& base_nodes = r.nodes ? *r.nodes : all_nodes;
  for (NodeId q : params.query)
    if (!base_nodes.contains(q)) throw NoCommunity("query node is not in any community");
  SubgraphView base(g, base_nodes, r.schemas ? &*r.schemas : nullptr);
  trace.g0_ms = ms_since(t0);

  struct Probe {
    std::optional<C> candidate;
    std::optional<Distance> qd;
    bool truncated = false;
  };
  auto probe = [&](Distance d) {
    trace.probes.push_back(d);
    auto f = query_distances(base, params.query, d);
    VertexSubset grown(g.num_nodes());
    for (NodeId v : base_nodes.members())
      if (f.dist[v] <= d) grown.insert(v);
    for (NodeId q : params.query) grown.insert(q);
    Probe out;
    out.truncated = f.truncated;
    out.candidate.emplace(g, params, &grown, r.schemas ? &*r.schemas : nullptr);
    out.qd = shrink_to(*out.candidate, params.query, d, trace);
    return out;
  };

  auto t1 = Clock::now();
  Distance lo = lower_bound_of(params);
  Probe found;
  Distance d = 1;
  while (true) {
    found = probe(d);
    if (found.qd) break;
    if (d == kInfiniteDistance) throw NoCommunity("query nodes are not in one connected community");
    lo = std::max(lo, d + 1);
    // Once the ball holds every reachable node only the target can still grow.
    if (!found.truncated || d > kInfiniteDistance / 2)
      d = kInfiniteDistance;
    else
      d *= 2;
  }
  C best = std::move(*found.candidate);
  Distance hi = *found.qd;
  lo = std::min(lo, hi);
  if (params.record_history) trace.history.push_back(best.nodes());
  while (lo < hi) {
    Distance mid = lo + (hi - lo) / 2;
    trace.bounds.emplace_back(lo, hi);
    Probe p = probe(mid);
    if (p.qd) {
      best = std::move(*p.candidate);
      hi = *p.qd;
      if (params.record_history) trace.history.push_back(best.nodes());
    } else {
      lo = mid + 1;
    }
  }
  trace.loop_ms = ms_since(t1);
  return finish(g, params, best, hi, std::move(trace));
}

}  // namespace

Community search_community(const MultilayerGraph& g, const SearchParams& params,
                           const SearchIndexes& indexes) {
  const bool truss = params.structure == Structure::kFirmTruss;
  if (params.strategy == Strategy::kGlobal)
    return truss ? run_global<TrussCandidate>(g, params, indexes)
                 : run_global<CoreCandidate>(g, params, indexes);
  return truss ? run_local<TrussCandidate>(g, params, indexes)
               : run_local<CoreCandidate>(g, params, indexes);
}

Community ftcs_global(const MultilayerGraph& g, SearchParams params, const SkylineIndex* index) {
  params.structure = Structure::kFirmTruss;
  params.strategy = Strategy::kGlobal;
  params.use_index = index != nullptr;
  return search_community(g, params, {index, nullptr});
}

Community ftcs_local(const MultilayerGraph& g, SearchParams params, const SkylineIndex* index) {
  params.structure = Structure::kFirmTruss;
  params.strategy = Strategy::kLocal;
  params.use_index = index != nullptr;
  return search_community(g, params, {index, nullptr});
}

Community fccs_global(const MultilayerGraph& g, SearchParams params, const SkylineCoreness* index) {
  params.structure = Structure::kFirmCore;
  params.strategy = Strategy::kGlobal;
  params.use_index = index != nullptr;
  return search_community(g, params, {nullptr, index});
}

Community fccs_local(const MultilayerGraph& g, SearchParams params, const SkylineCoreness* index) {
  params.structure = Structure::kFirmCore;
  params.strategy = Strategy::kLocal;
  params.use_index = index != nullptr;
  return search_community(g, params, {nullptr, index});
}

std::optional<std::string> validate_community(const MultilayerGraph& g, const Community& c) {
  const auto& p = c.params;
  for (NodeId q : p.query)
    if (!c.nodes.contains(q)) return "query node missing";

  // Connectivity over the community's own edges.
  auto members = c.nodes.members();
  if (members.empty()) return "empty community";
  auto live = [&](SchemaId s) {
    auto [u, v] = g.schema(s);
    if (!c.nodes.contains(u) || !c.nodes.contains(v)) return false;
    return !c.schemas || c.schemas->contains(s);
  };
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeId> stack{members[0]};
  seen[members[0]] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    auto nb = g.union_neighbors(v);
    auto sc = g.union_schemas(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (seen[nb[i]] || !live(sc[i])) continue;
      seen[nb[i]] = true;
      ++reached;
      stack.push_back(nb[i]);
    }
  }
  if (reached != members.size()) return "community is disconnected";

  auto in_layer = [&](SchemaId s, LayerId l) {
    auto layers = g.schema_layers(s);
    return std::binary_search(layers.begin(), layers.end(), l);
  };

  if (p.structure == Structure::kFirmTruss) {
    if (!c.schemas) return "FirmTruss community without edge schemas";
    std::vector<std::size_t> incident(g.num_nodes(), 0);
    for (SchemaId s : c.schemas->members()) {
      auto [u, v] = g.schema(s);
      if (!c.nodes.contains(u) || !c.nodes.contains(v)) return "edge schema leaves the community";
      ++incident[u];
      ++incident[v];
      std::uint32_t good_layers = 0;
      for (LayerId l : g.schema_layers(s)) {
        std::uint32_t triangles = 0;
        for (NodeId w : members) {
          if (w == u || w == v) continue;
          auto a = g.find_schema(u, w), b = g.find_schema(v, w);
          if (a && b && c.schemas->contains(*a) && c.schemas->contains(*b) && in_layer(*a, l) &&
              in_layer(*b, l))
            ++triangles;
        }
        if (triangles + 2 >= p.k) ++good_layers;
      }
      if (good_layers < p.lambda) return "edge schema below the support threshold";
    }
    for (NodeId v : members)
      if (incident[v] == 0) return "isolated node in FirmTruss community";
  } else {
    for (NodeId v : members) {
      std::uint32_t good_layers = 0;
      for (LayerId l = 0; l < g.num_layers(); ++l) {
        std::uint32_t d = 0;
        for (NodeId w : g.neighbors(l, v))
          if (c.nodes.contains(w)) ++d;
        if (d >= p.k) ++good_layers;
      }
      if (good_layers < p.lambda) return "node below the degree threshold";
    }
  }
  return std::nullopt;
}

}  // namespace firmml
