#include "firmml/attributed.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "firmml/distance.h"
#include "firmml/errors.h"
#include "firmml/metrics.h"

namespace firmml {

namespace {

constexpr double kZero = 1e-12;
constexpr std::size_t kCacheLimit = 4096;

double clamp0(double x) { return x < kZero ? 0.0 : x; }

}  // namespace

double similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::domain_error("similarity: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

SimilarityFn cosine_similarity(const AttributeTable& attributes) {
  return [&attributes](NodeId u, NodeId v) { return similarity(attributes[u], attributes[v]); };
}

HomophilyContext::HomophilyContext(SimilarityFn h, double p) : fn_(std::move(h)), p_(p) {
  if (std::isnan(p)) throw std::domain_error("p is NaN");
}

double HomophilyContext::cached(std::size_t a, std::size_t b) const {
  if (a == b) return 0;
  if (!use_cache_) return fn_(nodes_[a], nodes_[b]);
  if (a < b) std::swap(a, b);
  double& slot = cache_[a * (a - 1) / 2 + b];
  if (std::isnan(slot)) slot = fn_(nodes_[a], nodes_[b]);
  return slot;
}

double HomophilyContext::h(NodeId u, NodeId v) const {
  if (u < local_.size() && v < local_.size() && local_[u] >= 0 && local_[v] >= 0)
    return cached(static_cast<std::size_t>(local_[u]), static_cast<std::size_t>(local_[v]));
  return fn_(u, v);
}

void HomophilyContext::reset(std::span<const NodeId> members) {
  nodes_.assign(members.begin(), members.end());
  const std::size_t m = nodes_.size();
  NodeId max_id = 0;
  for (NodeId v : nodes_) max_id = std::max(max_id, v);
  local_.assign(m == 0 ? 0 : max_id + 1, -1);
  for (std::size_t i = 0; i < m; ++i) local_[nodes_[i]] = static_cast<std::int64_t>(i);
  alive_.assign(m, true);
  size_ = m;
  use_cache_ = m <= kCacheLimit;
  cache_.assign(use_cache_ && m > 1 ? m * (m - 1) / 2 : 0, std::numeric_limits<double>::quiet_NaN());
  agg_.assign(m, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < a; ++b) {
      double x = cached(a, b);
      agg_[a] += x;
      agg_[b] += x;
    }
}

void HomophilyContext::remove(NodeId u) {
  if (!contains(u)) return;
  const std::size_t a = static_cast<std::size_t>(local_[u]);
  alive_[a] = false;
  --size_;
  for (std::size_t b = 0; b < nodes_.size(); ++b)
    if (alive_[b]) agg_[b] -= cached(a, b);
}

std::vector<NodeId> HomophilyContext::members() const {
  std::vector<NodeId> out;
  for (std::size_t a = 0; a < nodes_.size(); ++a)
    if (alive_[a]) out.push_back(nodes_[a]);
  std::sort(out.begin(), out.end());
  return out;
}

double HomophilyContext::score() const {
  std::vector<double> values;
  values.reserve(size_);
  for (std::size_t a = 0; a < nodes_.size(); ++a)
    if (alive_[a]) values.push_back(clamp0(agg_[a]));
  if (values.empty()) throw std::domain_error("score of an empty set");
  return generalized_mean(values, p_);
}

double HomophilyContext::power_sum() const {
  if (std::isinf(p_)) throw std::domain_error("power_sum needs finite p");
  double sum = 0;
  for (std::size_t a = 0; a < nodes_.size(); ++a)
    if (alive_[a]) sum += std::pow(clamp0(agg_[a]), p_);
  return sum;
}

double HomophilyContext::delta(NodeId u) const {
  if (std::isinf(p_)) throw std::domain_error("delta needs finite p");
  if (!contains(u)) throw std::domain_error("delta: node not in the set");
  const std::size_t a = static_cast<std::size_t>(local_[u]);
  const double hu = clamp0(agg_[a]);
  if (p_ == 1) return 2 * hu;
  // A zero aggregate has an infinite power for p < 0: such nodes are the
  // worst members and are removed first.
  if (p_ < 0 && hu == 0) return std::numeric_limits<double>::infinity();
  double total = std::pow(hu, p_);
  for (std::size_t b = 0; b < nodes_.size(); ++b) {
    if (!alive_[b] || b == a) continue;
    const double hv = clamp0(agg_[b]);
    const double after = clamp0(hv - cached(a, b));
    if (p_ < 0) {
      if (hv == 0) continue;
      if (after == 0) return -std::numeric_limits<double>::infinity();
    }
    total += std::pow(hv, p_) - std::pow(after, p_);
  }
  return total;
}

double homophily_score(const HomophilyContext& ctx, std::span<const NodeId> s) {
  std::vector<double> values;
  for (NodeId v : s) {
    double sum = 0;
    for (NodeId u : s)
      if (u != v) sum += ctx.h(v, u);
    values.push_back(clamp0(sum));
  }
  return generalized_mean(values, ctx.p());
}

double homophily_score(const HomophilyContext& ctx, const VertexSubset& s) {
  auto members = s.members();
  return homophily_score(ctx, std::span<const NodeId>(members));
}

double delta_u(const HomophilyContext& ctx, const VertexSubset& s, NodeId u) {
  const double p = ctx.p();
  if (std::isinf(p)) throw std::domain_error("delta needs finite p");
  if (!s.contains(u)) throw std::domain_error("delta: node not in the set");
  auto members = s.members();
  auto agg = [&](NodeId v) {
    double sum = 0;
    for (NodeId w : members)
      if (w != v) sum += ctx.h(v, w);
    return sum;
  };
  double total = std::pow(agg(u), p);
  for (NodeId v : members) {
    if (v == u) continue;
    double hv = agg(v);
    total += std::pow(hv, p) - std::pow(std::max(0.0, hv - ctx.h(v, u)), p);
  }
  return total;
}

namespace {

FirmTruss initial_truss(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                        std::span<const NodeId> query, const SkylineIndex* index) {
  return index ? index_maximal_firmtruss(g, *index, k, lambda, query)
               : maximal_firmtruss(g, k, lambda, query);
}

AttributedCommunity package(const MultilayerGraph& g, std::uint32_t k, std::uint32_t lambda,
                            std::span<const NodeId> query, FirmTruss t, double p, double score,
                            std::size_t g0_size, std::size_t steps) {
  AttributedCommunity out;
  out.p = p;
  out.score = score;
  out.removed = g0_size - t.nodes.size();
  Community& c = out.community;
  c.params.k = k;
  c.params.lambda = lambda;
  c.params.query.assign(query.begin(), query.end());
  c.params.structure = Structure::kFirmTruss;
  c.nodes = std::move(t.nodes);
  c.schemas = std::move(t.schemas);
  auto view = c.view(g);
  auto f = query_distances(view, query);
  for (NodeId v : c.nodes.members()) c.query_distance = std::max(c.query_distance, f.dist[v]);
  if (c.nodes.size() <= c.params.exact_diameter_cap) {
    c.diameter = diameter(view);
  } else {
    c.diameter = 2 * c.query_distance;
    c.diameter_exact = false;
  }
  c.trace.iterations = steps;
  return out;
}

// Shared greedy loop: pick() names the next victim, score() rates the current
// set. Stops as soon as a query node would leave; keeps the best intermediate,
// earliest on ties.
template <class Pick, class Score>
AttributedCommunity greedy(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                           std::uint32_t lambda, std::span<const NodeId> query,
                           const SkylineIndex* index, Pick pick, Score score) {
  if (query.empty()) throw std::domain_error("empty query");
  FirmTruss g0 = initial_truss(g, k, lambda, query, index);
  const std::size_t g0_size = g0.nodes.size();
  FirmTrussPeeler state(g, k, lambda, &g0.nodes, &g0.schemas);
  auto members = g0.nodes.members();
  ctx.reset(members);

  FirmTruss best = g0;
  double best_score = score(ctx);
  std::size_t steps = 0;
  VertexSubset qset = VertexSubset::of(g.num_nodes(), query);
  while (ctx.size() > 1) {
    NodeId u = pick(ctx);
    if (qset.contains(u)) break;
    ++steps;
    state.remove_vertices(std::span<const NodeId>(&u, 1));
    bool query_kept = true;
    for (NodeId q : query) query_kept = query_kept && state.nodes().contains(q);
    std::optional<VertexSubset> comp;
    if (query_kept) comp = connected_component(SubgraphView(g, state.nodes(), &state.schemas()), query);
    if (!comp) break;
    std::vector<NodeId> outside;
    for (NodeId v : state.nodes().members())
      if (!comp->contains(v)) outside.push_back(v);
    if (!outside.empty()) state.remove_vertices(outside);
    for (NodeId v : ctx.members())
      if (!state.nodes().contains(v)) ctx.remove(v);
    double s = score(ctx);
    if (s > best_score) {
      best_score = s;
      best = state.result();
    }
  }
  return package(g, k, lambda, query, std::move(best), ctx.p(), best_score, g0_size, steps);
}

}  // namespace

AttributedCommunity aftcs_approx(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                                 std::uint32_t lambda, std::span<const NodeId> query,
                                 const SkylineIndex* index) {
  const double p = ctx.p();
  if (p == 0) throw UnsupportedParameter("p = 0 is not supported by the greedy search");
  if (std::isinf(p)) throw std::domain_error("infinite p uses the exact routines");
  auto pick = [p](const HomophilyContext& c) {
    NodeId chosen = 0;
    double best = 0;
    bool first = true;
    for (NodeId v : c.members()) {
      double d = c.delta(v);
      bool better = p > 0 ? d < best : d > best;
      if (first || better) {
        chosen = v;
        best = d;
        first = false;
      }
    }
    return chosen;
  };
  return greedy(g, ctx, k, lambda, query, index, pick,
                [](const HomophilyContext& c) { return c.score(); });
}

AttributedCommunity exact_maxmin(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                                 std::uint32_t lambda, std::span<const NodeId> query,
                                 const SkylineIndex* index) {
  auto pick = [](const HomophilyContext& c) {
    NodeId chosen = 0;
    double best = std::numeric_limits<double>::infinity();
    for (NodeId v : c.members()) {
      double a = clamp0(c.aggregate(v));
      if (a < best) {
        chosen = v;
        best = a;
      }
    }
    return chosen;
  };
  auto min_aggregate = [](const HomophilyContext& c) {
    double m = std::numeric_limits<double>::infinity();
    for (NodeId v : c.members()) m = std::min(m, clamp0(c.aggregate(v)));
    return m;
  };
  auto out = greedy(g, ctx, k, lambda, query, index, pick, min_aggregate);
  out.p = -std::numeric_limits<double>::infinity();
  return out;
}

AttributedCommunity exact_maxinf(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                                 std::uint32_t lambda, std::span<const NodeId> query,
                                 const SkylineIndex* index) {
  if (query.empty()) throw std::domain_error("empty query");
  FirmTruss g0 = initial_truss(g, k, lambda, query, index);
  auto members = g0.nodes.members();
  ctx.reset(members);
  double best = 0;
  for (NodeId v : members) best = std::max(best, clamp0(ctx.aggregate(v)));
  const std::size_t size = g0.nodes.size();
  return package(g, k, lambda, query, std::move(g0), std::numeric_limits<double>::infinity(), best,
                 size, 0);
}

AttributedCommunity attributed_search(const MultilayerGraph& g, HomophilyContext& ctx,
                                      std::uint32_t k, std::uint32_t lambda,
                                      std::span<const NodeId> query, const SkylineIndex* index) {
  const double p = ctx.p();
  if (std::isinf(p))
    return p > 0 ? exact_maxinf(g, ctx, k, lambda, query, index)
                 : exact_maxmin(g, ctx, k, lambda, query, index);
  return aftcs_approx(g, ctx, k, lambda, query, index);
}

}  // namespace firmml
