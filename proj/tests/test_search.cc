#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "firmml/distance.h"
#include "firmml/errors.h"
#include "firmml/firmcore.h"
#include "firmml/firmtruss.h"
#include "firmml/oracle.h"
#include "firmml/search.h"
#include "test_graphs.h"

using namespace firmml;
using namespace firmml::testing;

namespace {

SearchParams params(std::uint32_t k, std::uint32_t lambda, std::vector<NodeId> q,
                    Structure s = Structure::kFirmTruss, Strategy st = Strategy::kGlobal) {
  SearchParams p;
  p.k = k;
  p.lambda = lambda;
  p.query = std::move(q);
  p.structure = s;
  p.strategy = st;
  return p;
}

// Strip of triangles: node i links to i+1 and i+2.
MultilayerGraph triangle_strip(int n) {
  MultilayerGraph::Builder b;
  for (int i = 0; i < n; ++i) b.node("s" + std::to_string(i));
  b.layer("1");
  for (int i = 0; i < n; ++i)
    for (int step = 1; step <= 2; ++step)
      if (i + step < n) b.add_edge(0, static_cast<NodeId>(i), static_cast<NodeId>(i + step));
  return b.build();
}

std::optional<Community> try_search(const MultilayerGraph& g, const SearchParams& p,
                                    const SearchIndexes& idx = {}) {
  try {
    return search_community(g, p, idx);
  } catch (const NoCommunity&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(FtcsGlobal, CompactQueryReturnsInitialTruss) {
  auto g = identical_cliques(5, 2);
  auto c = ftcs_global(g, params(4, 2, {0, 1, 2, 3, 4}));
  EXPECT_EQ(c.nodes, all_nodes(g));
  EXPECT_EQ(c.diameter, 1u);
  EXPECT_EQ(c.query_distance, 1u);
  EXPECT_TRUE(c.trace.probes.empty());
}

TEST(FtcsGlobal, FarCliquePruned) {
  // Two K4s on both layers joined by a strip of triangles on both layers.
  std::vector<std::tuple<std::string, std::string, std::string>> e;
  auto both = [&](const std::string& u, const std::string& v) {
    e.emplace_back("1", u, v);
    e.emplace_back("2", u, v);
  };
  std::vector<std::string> a{"a0", "a1", "a2", "a3"}, bq{"b0", "b1", "b2", "b3"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      both(a[i], a[j]);
      both(bq[i], bq[j]);
    }
  std::vector<std::string> strip{"a2", "a3", "s1", "s2", "s3", "s4", "b0", "b1"};
  for (std::size_t i = 0; i + 1 < strip.size(); ++i) both(strip[i], strip[i + 1]);
  for (std::size_t i = 0; i + 2 < strip.size(); ++i) both(strip[i], strip[i + 2]);
  auto g = from_edges(e);
  std::vector<NodeId> q{id(g, "a0")};
  auto c = ftcs_global(g, params(3, 2, q));
  for (const auto& label : bq) EXPECT_FALSE(c.nodes.contains(id(g, label)));
  auto local = ftcs_local(g, params(3, 2, q));
  EXPECT_EQ(local.nodes, c.nodes);
  auto opt = oracle::brute_min_diameter_community(g, 3, 2, q, Structure::kFirmTruss);
  ASSERT_TRUE(opt);
  EXPECT_LE(c.diameter, 2 * opt->value);
  EXPECT_FALSE(validate_community(g, c));
}

TEST(FtcsLocal, EgoNetAnswersAtFirstProbe) {
  auto g = parse_graph_text(
      "1 q a\n1 q b\n1 q c\n1 a b\n1 a c\n1 b c\n1 c x1\n1 x1 x2\n1 x2 x3\n1 x3 x4\n1 x4 x2\n");
  std::vector<NodeId> q{id(g, "q")};
  auto c = ftcs_local(g, params(3, 1, q));
  EXPECT_EQ(c.nodes, nodes_of(g, {"q", "a", "b", "c"}));
  EXPECT_EQ(c.trace.probes, std::vector<Distance>{1});
}

TEST(FtcsLocal, DoublingScheduleThenBinarySearch) {
  // Query ends are 5 apart, so probes 1, 2 and 4 cannot hold both.
  auto g = triangle_strip(15);
  std::vector<NodeId> q{0, 10};
  auto c = ftcs_local(g, params(3, 1, q));
  EXPECT_EQ(c.query_distance, 5u);
  EXPECT_EQ(c.nodes.size(), 11u);
  EXPECT_EQ(c.trace.probes, (std::vector<Distance>{1, 2, 4, 8, 6, 5}));
  EXPECT_EQ(ftcs_global(g, params(3, 1, q)).nodes, c.nodes);
}

TEST(Search, NoCommunityAndBadParameters) {
  auto g = parse_graph_text("1 a b\n1 b c\n1 x y\n");
  std::vector<NodeId> q{id(g, "a")};
  EXPECT_THROW(ftcs_global(g, params(3, 1, q)), NoCommunity);
  EXPECT_THROW(ftcs_local(g, params(3, 1, q)), NoCommunity);
  std::vector<NodeId> split{id(g, "a"), id(g, "x")};
  EXPECT_THROW(ftcs_global(g, params(2, 1, split)), NoCommunity);
  EXPECT_THROW(ftcs_local(g, params(2, 1, split)), NoCommunity);
  EXPECT_THROW(fccs_global(g, params(1, 1, split)), NoCommunity);
  EXPECT_THROW(fccs_local(g, params(1, 1, split)), NoCommunity);
  EXPECT_THROW(ftcs_global(g, params(1, 1, q)), std::domain_error);
  EXPECT_THROW(ftcs_global(g, params(2, 2, q)), std::domain_error);
  EXPECT_THROW(ftcs_global(g, params(2, 1, {})), std::domain_error);
}

TEST(FccsSearch, KZeroPrunesByDistanceOnly) {
  auto g = parse_graph_text("1 a b\n1 b c\n2 c d\n");
  std::vector<NodeId> q{id(g, "b")};
  auto c = fccs_global(g, params(0, 1, q, Structure::kFirmCore));
  EXPECT_EQ(c.nodes, nodes_of(g, {"b"}));
  EXPECT_EQ(c.diameter, 0u);
  auto l = fccs_local(g, params(0, 1, q, Structure::kFirmCore, Strategy::kLocal));
  EXPECT_EQ(l.nodes, c.nodes);
  std::vector<NodeId> pair{id(g, "a"), id(g, "c")};
  auto p = fccs_global(g, params(0, 2, pair, Structure::kFirmCore));
  EXPECT_EQ(p.nodes, nodes_of(g, {"a", "b", "c"}));
  EXPECT_EQ(p.query_distance, 2u);
}

TEST(FccsSearch, IdenticalFourCliques) {
  auto g = identical_cliques(4, 2);
  std::vector<NodeId> q{1};
  for (auto st : {Strategy::kGlobal, Strategy::kLocal}) {
    auto c = search_community(g, params(3, 2, q, Structure::kFirmCore, st));
    EXPECT_EQ(c.nodes, all_nodes(g));
    EXPECT_EQ(c.diameter, 1u);
  }
}

TEST(Search, DiameterBoundMode) {
  auto g = identical_cliques(6, 1);
  auto p = params(3, 1, {0});
  p.diameter_mode = DiameterMode::kBound;
  p.exact_diameter_cap = 3;
  auto c = ftcs_global(g, p);
  EXPECT_FALSE(c.diameter_exact);
  EXPECT_EQ(c.diameter, 2 * c.query_distance);
}

// Random suites: oracle ratio, cross-driver agreement, index equivalence,
// post-validation and nested candidates.
class RandomSearch : public ::testing::TestWithParam<Structure> {};

TEST_P(RandomSearch, AgreesWithOracleAndAcrossDrivers) {
  const Structure s = GetParam();
  const bool truss = s == Structure::kFirmTruss;
  std::mt19937_64 rng(truss ? 100 : 200);
  int solved = 0;
  for (std::uint64_t seed = 0; solved < 50 && seed < 400; ++seed) {
    auto g = random_graph(10 + seed % 3, 2 + seed % 2, 0.45, 7000 + seed);
    std::uint32_t lambda = 1 + static_cast<std::uint32_t>(rng() % g.num_layers());
    std::uint32_t k = truss ? 3 + static_cast<std::uint32_t>(rng() % 2) : 1 + static_cast<std::uint32_t>(rng() % 3);
    std::vector<NodeId> q{static_cast<NodeId>(rng() % g.num_nodes())};
    if (rng() % 4 == 0) q.push_back(static_cast<NodeId>(rng() % g.num_nodes()));
    if (q.size() == 2 && q[0] == q[1]) q.pop_back();
    auto opt = oracle::brute_min_diameter_community(g, k, lambda, q, s);

    SkylineIndex tidx;
    SkylineCoreness cidx;
    SearchIndexes idx;
    if (truss) {
      tidx = firmtruss_decomposition(g);
      idx.truss = &tidx;
    } else {
      cidx = firmcore_decomposition(g);
      idx.core = &cidx;
    }
    std::vector<Community> found;
    for (auto st : {Strategy::kGlobal, Strategy::kLocal})
      for (bool use_index : {false, true}) {
        auto p = params(k, lambda, q, s, st);
        p.use_index = use_index;
        p.record_history = true;
        auto c = try_search(g, p, idx);
        ASSERT_EQ(c.has_value(), opt.has_value()) << "seed " << seed;
        if (c) found.push_back(*c);
      }
    if (!opt) continue;
    ++solved;
    for (const auto& c : found) {
      EXPECT_FALSE(validate_community(g, c)) << *validate_community(g, c);
      // Minimum feasible query distance never exceeds the optimum diameter.
      // The diameter itself is within 2 * opt + 1: a layer switch at a query
      // node can add one to the triangle bound.
      EXPECT_LE(c.query_distance, opt->value) << "seed " << seed;
      EXPECT_LE(c.diameter, 2 * opt->value + 1) << "seed " << seed;
      EXPECT_EQ(c.query_distance, found[0].query_distance);
      EXPECT_EQ(c.nodes, found[0].nodes);
      EXPECT_EQ(c.schemas, found[0].schemas);
      for (std::size_t i = 1; i < c.trace.history.size(); ++i)
        EXPECT_TRUE(c.trace.history[i].is_subset_of(c.trace.history[i - 1]));
    }
  }
  EXPECT_EQ(solved, 50);
}

INSTANTIATE_TEST_SUITE_P(Structures, RandomSearch,
                         ::testing::Values(Structure::kFirmTruss, Structure::kFirmCore));

// Some optimal answer H survives every disjoint query-independent optimum H*:
// the union is not a connected FirmTruss, or its diameter grows.
TEST(FreeRider, SomeOptimumResistsQueryIndependentOptima) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60 && checked < 15; ++seed) {
    auto g = random_graph(10, 2, 0.5, 9100 + seed);
    std::vector<NodeId> q{static_cast<NodeId>(rng() % g.num_nodes())};
    auto mine = oracle::brute_min_diameter_community(g, 3, 1, q, Structure::kFirmTruss);
    if (!mine) continue;
    // Query-independent optima: the smallest diameter over every start node.
    double best = std::numeric_limits<double>::infinity();
    std::vector<VertexSubset> global;
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
      std::vector<NodeId> qx{x};
      auto o = oracle::brute_min_diameter_community(g, 3, 1, qx, Structure::kFirmTruss);
      if (!o) continue;
      if (o->value < best) {
        best = o->value;
        global.clear();
      }
      if (o->value == best)
        for (const auto& h : o->optima)
          if (std::find(global.begin(), global.end(), h) == global.end()) global.push_back(h);
    }
    auto resists = [&](const VertexSubset& h) {
      for (const auto& star : global) {
        bool disjoint = true;
        for (NodeId v : star.members()) disjoint = disjoint && !h.contains(v);
        if (!disjoint) continue;
        VertexSubset uni = h;
        for (NodeId v : star.members()) uni.insert(v);
        auto t = firmtruss(g, 3, 1, &uni);
        if (t.nodes != uni) continue;
        SubgraphView view(g, t.nodes, &t.schemas);
        if (!is_connected(view)) continue;
        if (static_cast<double>(diameter(view)) <= mine->value) return false;
      }
      return true;
    };
    EXPECT_TRUE(std::any_of(mine->optima.begin(), mine->optima.end(), resists)) << "seed " << seed;
    ++checked;
  }
  EXPECT_GT(checked, 0);
}
