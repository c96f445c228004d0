#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "firmml/firmtruss.h"
#include "firmml/graph.h"
#include "firmml/search.h"
#include "firmml/types.h"

namespace firmml {

// Symmetric, non-negative pairwise similarity.
using SimilarityFn = std::function<double(NodeId, NodeId)>;

// Cosine similarity; 0 when either vector is zero.
double similarity(std::span<const double> a, std::span<const double> b);

SimilarityFn cosine_similarity(const AttributeTable& attributes);

// Similarity accessor, exponent p and the running aggregates
// h_S(v) = sum over u in S, u != v of h(v, u) for a shrinking member set S.
class HomophilyContext {
 public:
  HomophilyContext(SimilarityFn h, double p);

  double p() const { return p_; }
  double h(NodeId u, NodeId v) const;

  // Starts tracking S = members and caches their pairwise similarities.
  void reset(std::span<const NodeId> members);
  void remove(NodeId u);

  bool contains(NodeId v) const { return v < local_.size() && local_[v] >= 0 && alive_[local_[v]]; }
  std::size_t size() const { return size_; }
  std::vector<NodeId> members() const;
  double aggregate(NodeId v) const { return agg_[local_[v]]; }

  // Γ_p of the current set.
  double score() const;
  // Σ h_S(v)^p over the current set; finite p only.
  double power_sum() const;
  // h_S(u)^p + Σ_{v != u} (h_S(v)^p - (h_S(v) - h(v,u))^p); finite p only.
  double delta(NodeId u) const;

 private:
  double cached(std::size_t a, std::size_t b) const;

  SimilarityFn fn_;
  double p_;
  std::vector<NodeId> nodes_;          // tracked nodes by local index
  std::vector<std::int64_t> local_;    // node id -> local index or -1
  std::vector<bool> alive_;
  std::vector<double> agg_;
  std::size_t size_ = 0;
  bool use_cache_ = false;
  mutable std::vector<double> cache_;  // lower triangle, NaN until computed
};

// Γ_p(S) and Δ_u(S) from scratch.
double homophily_score(const HomophilyContext& ctx, std::span<const NodeId> s);
double homophily_score(const HomophilyContext& ctx, const VertexSubset& s);
double delta_u(const HomophilyContext& ctx, const VertexSubset& s, NodeId u);

struct AttributedCommunity {
  Community community;
  double p = 1;
  double score = 0;
  std::size_t removed = 0;  // nodes of the maximal FirmTruss left out
};

// Greedy peeling by Δ_u (argmin for p > 0, argmax for p < 0), keeping the
// best intermediate. p = 0 and infinite p are rejected.
AttributedCommunity aftcs_approx(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                                 std::uint32_t lambda, std::span<const NodeId> query,
                                 const SkylineIndex* index = nullptr);

// p = -inf: repeatedly removes the member with the smallest h_S.
AttributedCommunity exact_maxmin(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                                 std::uint32_t lambda, std::span<const NodeId> query,
                                 const SkylineIndex* index = nullptr);

// p = +inf: the maximal FirmTruss containing Q.
AttributedCommunity exact_maxinf(const MultilayerGraph& g, HomophilyContext& ctx, std::uint32_t k,
                                 std::uint32_t lambda, std::span<const NodeId> query,
                                 const SkylineIndex* index = nullptr);

// Picks the routine matching ctx.p().
AttributedCommunity attributed_search(const MultilayerGraph& g, HomophilyContext& ctx,
                                      std::uint32_t k, std::uint32_t lambda,
                                      std::span<const NodeId> query,
                                      const SkylineIndex* index = nullptr);

}  // namespace firmml
