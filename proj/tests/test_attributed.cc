#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "firmml/attributed.h"
#include "firmml/errors.h"
#include "firmml/firmtruss.h"
#include "firmml/oracle.h"
#include "firmml/search.h"
#include "test_graphs.h"

using namespace firmml;
using namespace firmml::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric similarity from a dense n x n table.
SimilarityFn table(std::size_t n, std::vector<double> values) {
  return [n, values = std::move(values)](NodeId u, NodeId v) { return u == v ? 0.0 : values[u * n + v]; };
}

SimilarityFn random_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = m[j * n + i] = unit(rng);
  return table(n, std::move(m));
}

// Appendix example: u1 = 0, u2 = 1, v1 = 2, v2 = 3.
SimilarityFn four_node_example() {
  std::vector<double> m(16, 0.0);
  auto set = [&](int a, int b, double x) { m[a * 4 + b] = m[b * 4 + a] = x; };
  set(2, 1, 0.1);
  set(3, 0, 0.1);
  set(3, 1, 0.5);
  set(2, 0, 0.2);
  set(0, 1, 0.3);
  set(2, 3, 0.0);
  return table(4, std::move(m));
}

// Centred vectors, so roughly half of the pairs have zero cosine similarity.
AttributeTable random_attributes(const MultilayerGraph& g, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  AttributeTable t(g.num_nodes(), dim);
  std::vector<double> row(dim);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (auto& x : row) x = unit(rng);
    t.set(v, row);
  }
  return t;
}

AttributeTable uniform_attributes(const MultilayerGraph& g) {
  AttributeTable t(g.num_nodes(), 2);
  std::vector<double> row{1.0, 2.0};
  for (NodeId v = 0; v < g.num_nodes(); ++v) t.set(v, row);
  return t;
}

// Ξ(S) = Σ_v h_S(v)^p, from the definition.
double xi(const SimilarityFn& h, const std::vector<NodeId>& s, double p) {
  double total = 0;
  for (NodeId v : s) {
    double agg = 0;
    for (NodeId u : s)
      if (u != v) agg += h(v, u);
    total += std::pow(agg, p);
  }
  return total;
}

std::vector<NodeId> subset_from_mask(std::uint32_t mask, std::size_t n) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) out.push_back(static_cast<NodeId>(i));
  return out;
}

}  // namespace

TEST(Similarity, Examples) {
  std::vector<double> a{1, 1}, b{1, 0}, c{0, 1}, zero{0, 0}, three{1, 2, 3};
  EXPECT_DOUBLE_EQ(similarity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(similarity(b, c), 0.0);
  EXPECT_NEAR(similarity(a, b), std::sqrt(2.0) / 2, 1e-15);
  EXPECT_EQ(similarity(a, zero), 0.0);
  EXPECT_THROW(similarity(a, three), std::domain_error);
}

TEST(HomophilyScore, AppendixValues) {
  HomophilyContext ctx(four_node_example(), 1);
  std::vector<NodeId> pair{0, 1}, triple{0, 1, 2};
  EXPECT_NEAR(homophily_score(ctx, pair), 0.3, 1e-12);
  EXPECT_NEAR(homophily_score(ctx, triple), 0.4, 1e-12);
}

TEST(HomophilyScore, MarginalGainsAreNeitherSubNorSupermodular) {
  HomophilyContext ctx(four_node_example(), 1);
  auto gamma = [&](std::vector<NodeId> s) { return homophily_score(ctx, s); };
  std::vector<NodeId> s{0}, t{0, 1};
  EXPECT_NEAR(gamma({0, 2}) - gamma(s), 0.2, 1e-12);
  EXPECT_NEAR(gamma({0, 1, 2}) - gamma(t), 0.1, 1e-12);
  EXPECT_NEAR(gamma({0, 3}) - gamma(s), 0.1, 1e-12);
  EXPECT_NEAR(gamma({0, 1, 3}) - gamma(t), 0.3, 1e-12);
}

TEST(HomophilyScore, SingletonAndLimits) {
  std::mt19937_64 rng(1);
  auto h = random_table(5, rng);
  std::vector<NodeId> one{3};
  for (double p : {0.0, 1.0, 2.0, kInf}) {
    HomophilyContext ctx(h, p);
    EXPECT_EQ(homophily_score(ctx, one), 0.0);
  }
  std::vector<NodeId> s{0, 1, 2, 3};
  HomophilyContext hi(h, kInf), lo(h, -kInf), one_p(h, 1);
  double mx = 0, mn = kInf, mean = 0;
  for (NodeId v : s) {
    double a = 0;
    for (NodeId u : s)
      if (u != v) a += h(v, u);
    mx = std::max(mx, a);
    mn = std::min(mn, a);
    mean += a / 4;
  }
  EXPECT_NEAR(homophily_score(hi, s), mx, 1e-12);
  EXPECT_NEAR(homophily_score(lo, s), mn, 1e-12);
  EXPECT_NEAR(homophily_score(one_p, s), mean, 1e-12);
  // Negative p with a zero aggregate scores 0.
  std::vector<NodeId> zero_pair{2, 3};
  HomophilyContext neg(four_node_example(), -1);
  EXPECT_EQ(homophily_score(neg, zero_pair), 0.0);
}

TEST(Delta, PowerOneIsTwiceTheAggregate) {
  std::mt19937_64 rng(2);
  auto h = random_table(8, rng);
  HomophilyContext ctx(h, 1);
  VertexSubset s(8, true);
  std::vector<NodeId> all = s.members();
  ctx.reset(all);
  for (NodeId u = 0; u < 8; ++u) {
    EXPECT_NEAR(delta_u(ctx, s, u), 2 * ctx.aggregate(u), 1e-12);
    EXPECT_NEAR(ctx.delta(u), 2 * ctx.aggregate(u), 1e-12);
  }
}

TEST(Delta, ZeroWhenIsolatedBySimilarity) {
  std::vector<double> m(9, 0.0);
  m[0 * 3 + 1] = m[1 * 3 + 0] = 0.7;
  HomophilyContext ctx(table(3, m), 2);
  VertexSubset s(3, true);
  EXPECT_EQ(delta_u(ctx, s, 2), 0.0);
  EXPECT_THROW(delta_u(HomophilyContext(table(3, m), kInf), s, 2), std::domain_error);
}

TEST(Delta, RemovalIdentityAgainstScratch) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + trial % 5;
    auto h = random_table(n, rng);
    for (double p : {2.0, 3.0, 0.5}) {
      HomophilyContext ctx(h, p);
      VertexSubset s(n, true);
      auto all = s.members();
      const NodeId u = static_cast<NodeId>(rng() % n);
      double lhs = static_cast<double>(n) * std::pow(homophily_score(ctx, s), p) - delta_u(ctx, s, u);
      VertexSubset rest = s;
      rest.erase(u);
      double rhs = static_cast<double>(n - 1) * std::pow(homophily_score(ctx, rest), p);
      EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST(HomophilyContext, IncrementalMatchesScratch) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 12;
    auto h = random_table(n, rng);
    for (double p : {1.0, 2.0, -1.0}) {
      HomophilyContext ctx(h, p);
      VertexSubset s(n, true);
      auto all = s.members();
      ctx.reset(all);
      while (s.size() > 2) {
        auto members = s.members();
        NodeId u = members[rng() % members.size()];
        double scratch_delta = delta_u(ctx, s, u);
        EXPECT_NEAR(ctx.delta(u), scratch_delta, 1e-9 * std::max(1.0, std::abs(scratch_delta)));
        ctx.remove(u);
        s.erase(u);
        double scratch = homophily_score(ctx, s);
        EXPECT_NEAR(ctx.score(), scratch, 1e-9 * std::max(1.0, scratch));
        EXPECT_EQ(ctx.members(), s.members());
        if (p > 0)
          EXPECT_NEAR(ctx.power_sum(), static_cast<double>(s.size()) * std::pow(scratch, p),
                      1e-9 * std::max(1.0, ctx.power_sum()));
      }
    }
  }
}

TEST(HomophilyScore, InfluenceFacts) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8;
    auto h = random_table(n, rng);
    std::uint32_t mask = static_cast<std::uint32_t>(rng() % 255) + 1;
    auto s = subset_from_mask(mask, n);
    if (s.size() == n) continue;
    NodeId u = 0;
    while (mask >> u & 1u) ++u;
    for (double p : {1.0, 2.0, 3.0}) {
      HomophilyContext ctx(h, p);
      auto with = s;
      with.push_back(u);
      VertexSubset sw = VertexSubset::of(n, with);
      double before = std::pow(homophily_score(ctx, s), p);
      double after = std::pow(homophily_score(ctx, with), p);
      double d = delta_u(ctx, sw, u);
      if (std::abs(d - before) < 1e-9) continue;
      EXPECT_EQ(after > before, d > before);
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(HomophilyScore, XiIsSupermodularForPowersAtLeastOne) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 8;
    auto h = random_table(n, rng);
    std::uint32_t a = static_cast<std::uint32_t>(rng() % 256), b = static_cast<std::uint32_t>(rng() % 256);
    for (double p : {1.0, 2.0, 3.0}) {
      double lhs = xi(h, subset_from_mask(a, n), p) + xi(h, subset_from_mask(b, n), p);
      double rhs = xi(h, subset_from_mask(a | b, n), p) + xi(h, subset_from_mask(a & b, n), p);
      EXPECT_LE(lhs, rhs + 1e-9);
    }
  }
}

TEST(AftcsApprox, UniformAttributesKeepInitialTruss) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = random_graph(14, 2, 0.5, 300 + seed);
    auto attrs = uniform_attributes(g);
    std::vector<NodeId> q{0};
    FirmTruss g0;
    try {
      g0 = maximal_firmtruss(g, 3, 1, q);
    } catch (const NoCommunity&) {
      continue;
    }
    for (double p : {1.0, 2.0, -1.0}) {
      HomophilyContext ctx(cosine_similarity(attrs), p);
      auto r = aftcs_approx(g, ctx, 3, 1, q);
      EXPECT_EQ(r.community.nodes, g0.nodes);
      EXPECT_EQ(r.removed, 0u);
    }
  }
}

TEST(AftcsApprox, RejectsUnsupportedP) {
  auto g = identical_cliques(5, 1);
  auto attrs = uniform_attributes(g);
  std::vector<NodeId> q{0};
  HomophilyContext zero(cosine_similarity(attrs), 0);
  EXPECT_THROW(aftcs_approx(g, zero, 3, 1, q), UnsupportedParameter);
  HomophilyContext inf(cosine_similarity(attrs), kInf);
  EXPECT_THROW(aftcs_approx(g, inf, 3, 1, q), std::domain_error);
  HomophilyContext one(cosine_similarity(attrs), 1);
  std::vector<NodeId> far{0};
  EXPECT_THROW(aftcs_approx(g, one, 6, 1, far), NoCommunity);
}

// Ratio against the exhaustive optimum for p = 1, 2, 3 with factor (p+1)^{1/p}.
TEST(AftcsApprox, ApproximationFactor) {
  for (double p : {1.0, 2.0, 3.0}) {
    const double factor = std::pow(p + 1, 1 / p);
    std::mt19937_64 rng(static_cast<std::uint64_t>(40 + p));
    int solved = 0, shrunk = 0;
    for (std::uint64_t seed = 0; solved < 50 && seed < 300; ++seed) {
      auto g = random_graph(9 + seed % 2, 2, 0.55, 1200 + seed);
      auto attrs = random_attributes(g, 3, rng);
      std::vector<NodeId> q{static_cast<NodeId>(rng() % g.num_nodes())};
      HomophilyContext ctx(cosine_similarity(attrs), p);
      auto opt = oracle::brute_max_homophily(g, ctx, 3, 1, q);
      if (!opt) {
        EXPECT_THROW(aftcs_approx(g, ctx, 3, 1, q), NoCommunity);
        continue;
      }
      ++solved;
      auto r = aftcs_approx(g, ctx, 3, 1, q);
      EXPECT_FALSE(validate_community(g, r.community));
      EXPECT_NEAR(r.score, homophily_score(ctx, r.community.nodes), 1e-9);
      EXPECT_GE(r.score * factor + 1e-12, opt->value) << "p " << p << " seed " << seed;
      EXPECT_LE(r.score, opt->value + 1e-9);
      if (r.removed > 0) ++shrunk;
    }
    EXPECT_EQ(solved, 50) << "p " << p;
    EXPECT_GT(shrunk, 5) << "p " << p;
  }
}

TEST(AftcsApprox, NegativePReturnsValidCommunity) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_graph(12, 2, 0.5, 1500 + seed);
    auto attrs = random_attributes(g, 3, rng);
    std::vector<NodeId> q{static_cast<NodeId>(rng() % g.num_nodes())};
    HomophilyContext ctx(cosine_similarity(attrs), -2);
    try {
      auto r = aftcs_approx(g, ctx, 3, 1, q);
      EXPECT_FALSE(validate_community(g, r.community));
      EXPECT_TRUE(r.community.nodes.contains(q[0]));
    } catch (const NoCommunity&) {
    }
  }
}

TEST(ExactMaxMin, ZeroSimilarityNodeGoesFirst) {
  auto g = identical_cliques(5, 1);
  AttributeTable t(5, 2);
  std::vector<double> same{1, 1}, none{0, 0};
  for (NodeId v = 0; v < 4; ++v) t.set(v, same);
  t.set(4, none);
  HomophilyContext ctx(cosine_similarity(t), -kInf);
  std::vector<NodeId> q{1};
  auto r = exact_maxmin(g, ctx, 3, 1, q);
  EXPECT_EQ(r.community.nodes, nodes_of(g, {"n0", "n1", "n2", "n3"}));
  EXPECT_NEAR(r.score, 3.0, 1e-12);
  auto uniform = uniform_attributes(g);
  HomophilyContext flat(cosine_similarity(uniform), -kInf);
  EXPECT_EQ(exact_maxmin(g, flat, 3, 1, q).community.nodes, all_nodes(g));
}

TEST(ExactMaxMin, MatchesOracleOptimum) {
  std::mt19937_64 rng(10);
  int solved = 0;
  for (std::uint64_t seed = 0; solved < 40 && seed < 300; ++seed) {
    auto g = random_graph(10, 2, 0.55, 1700 + seed);
    auto attrs = random_attributes(g, 3, rng);
    std::vector<NodeId> q{static_cast<NodeId>(rng() % g.num_nodes())};
    HomophilyContext ctx(cosine_similarity(attrs), -kInf);
    auto opt = oracle::brute_max_homophily(g, ctx, 3, 1, q);
    if (!opt) continue;
    ++solved;
    auto r = exact_maxmin(g, ctx, 3, 1, q);
    EXPECT_NEAR(r.score, opt->value, 1e-9) << "seed " << seed;
    EXPECT_NEAR(homophily_score(ctx, r.community.nodes), opt->value, 1e-9);
    EXPECT_FALSE(validate_community(g, r.community));
  }
  EXPECT_EQ(solved, 40);
}

TEST(ExactMaxInf, EqualsMaximalFirmTruss) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 3 && seed < 50; ++seed) {
    auto g = random_graph(10, 2, 0.55, 1900 + seed);
    auto attrs = random_attributes(g, 3, rng);
    std::vector<NodeId> q{static_cast<NodeId>(rng() % g.num_nodes())};
    HomophilyContext ctx(cosine_similarity(attrs), kInf);
    auto opt = oracle::brute_max_homophily(g, ctx, 3, 1, q);
    if (!opt) {
      EXPECT_THROW(exact_maxinf(g, ctx, 3, 1, q), NoCommunity);
      continue;
    }
    ++checked;
    auto r = attributed_search(g, ctx, 3, 1, q);
    auto t = maximal_firmtruss(g, 3, 1, q);
    EXPECT_EQ(r.community.nodes, t.nodes);
    EXPECT_EQ(*r.community.schemas, t.schemas);
    EXPECT_NEAR(r.score, opt->value, 1e-12);
  }
  EXPECT_EQ(checked, 3);
}
