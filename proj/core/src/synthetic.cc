#include "firmml/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "firmml/errors.h"

namespace firmml {

SyntheticGraph generate_synthetic(const SyntheticParams& params) {
  const std::size_t n = params.nodes;
  const std::size_t layers = params.layers;
  if (layers == 0) throw ValidationError("need at least one layer");
  if (params.noise < 0 || !std::isfinite(params.noise)) throw ValidationError("noise must be >= 0");
  std::size_t planted = 0;
  for (const auto& p : params.plants) {
    if (p.size < p.k + 1) throw ValidationError("planted size must be at least k + 1");
    if (p.lambda < 1 || p.lambda > layers) throw ValidationError("planted lambda out of range");
    if (p.k < 2) throw ValidationError("planted k must be at least 2");
    planted += p.size;
  }
  if (planted > n) throw ValidationError("planted communities need more nodes than available");

  std::mt19937_64 rng(params.seed);
  MultilayerGraph::Builder b;
  for (std::size_t v = 0; v < n; ++v) b.node("v" + std::to_string(v));
  for (std::size_t l = 0; l < layers; ++l) b.layer(std::to_string(l + 1));

  SyntheticGraph out;
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t next = 0;
  std::vector<LayerId> all_layers(layers);
  std::iota(all_layers.begin(), all_layers.end(), LayerId{0});
  for (const auto& p : params.plants) {
    std::vector<NodeId> members(order.begin() + static_cast<std::ptrdiff_t>(next),
                                order.begin() + static_cast<std::ptrdiff_t>(next + p.size));
    next += p.size;
    std::sort(members.begin(), members.end());
    std::shuffle(all_layers.begin(), all_layers.end(), rng);
    for (std::uint32_t i = 0; i < p.lambda; ++i)
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t c = a + 1; c < members.size(); ++c)
          b.add_edge(all_layers[i], members[a], members[c]);
    out.communities.push_back(std::move(members));
  }

  if (n >= 2 && params.noise > 0) {
    const auto per_layer = static_cast<std::uint64_t>(std::llround(params.noise * static_cast<double>(n) / 2));
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t l = 0; l < layers; ++l)
      for (std::uint64_t i = 0; i < per_layer; ++i) {
        NodeId u = pick(rng), v = pick(rng);
        if (u != v) b.add_edge(static_cast<LayerId>(l), u, v);
      }
  }
  out.graph = b.build();

  if (params.attribute_dim > 0) {
    const std::size_t d = params.attribute_dim;
    AttributeTable t(n, d);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> row(d);
    std::vector<bool> done(n, false);
    for (const auto& c : out.communities) {
      std::vector<double> centre(d);
      for (auto& x : centre) x = unit(rng);
      for (NodeId v : c) {
        for (std::size_t i = 0; i < d; ++i) row[i] = centre[i] + 0.1 * unit(rng);
        t.set(v, row);
        done[v] = true;
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      for (auto& x : row) x = unit(rng);
      t.set(static_cast<NodeId>(v), row);
    }
    out.attributes = std::move(t);
  }
  return out;
}

void write_ground_truth(const MultilayerGraph& g, const std::vector<std::vector<NodeId>>& communities,
                        std::ostream& out) {
  for (const auto& c : communities) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << g.node_label(c[i]);
    out << '\n';
  }
}

void write_attributes(const MultilayerGraph& g, const AttributeTable& attributes, std::ostream& out) {
  out.precision(17);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!attributes.has_row(v)) continue;
    out << g.node_label(v);
    for (double x : attributes[v]) out << ' ' << x;
    out << '\n';
  }
}

}  // namespace firmml
