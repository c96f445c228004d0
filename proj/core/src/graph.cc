#include "firmml/graph.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "firmml/errors.h"
#include "hash.h"

namespace firmml {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits a line into whitespace-separated tokens after dropping any `#` comment.
void tokenize(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    f(++line_no, text.substr(pos, end - pos));
    pos = end + 1;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::optional<NodeId> MultilayerGraph::find_node(std::string_view label) const {
  auto it = node_ids_.find(std::string(label));
  if (it == node_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<SchemaId> MultilayerGraph::find_schema(NodeId u, NodeId v) const {
  auto nb = union_neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return union_schemas(u)[it - nb.begin()];
}

NodeId MultilayerGraph::Builder::node(std::string_view label) {
  auto [it, inserted] = node_ids_.try_emplace(std::string(label), static_cast<NodeId>(node_labels_.size()));
  if (inserted) node_labels_.emplace_back(label);
  return it->second;
}

LayerId MultilayerGraph::Builder::layer(std::string_view label) {
  auto [it, inserted] =
      layer_ids_.try_emplace(std::string(label), static_cast<LayerId>(layer_labels_.size()));
  if (inserted) layer_labels_.emplace_back(label);
  return it->second;
}

void MultilayerGraph::Builder::add_edge(LayerId l, NodeId u, NodeId v) {
  if (u == v) {
    ++self_loops_;
    return;
  }
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, l});
}

void MultilayerGraph::Builder::add_edge(std::string_view layer_label, std::string_view u,
                                        std::string_view v) {
  LayerId l = layer(layer_label);
  NodeId a = node(u);
  NodeId b = node(v);
  add_edge(l, a, b);
}

MultilayerGraph MultilayerGraph::Builder::build() {
  MultilayerGraph g;
  const std::size_t n = node_labels_.size();
  const std::size_t num_layers = layer_labels_.size();

  std::sort(edges_.begin(), edges_.end(), [](const RawEdge& a, const RawEdge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.l < b.l;
  });
  auto last = std::unique(edges_.begin(), edges_.end(), [](const RawEdge& a, const RawEdge& b) {
    return a.u == b.u && a.v == b.v && a.l == b.l;
  });
  g.duplicates_ = static_cast<std::size_t>(edges_.end() - last);
  edges_.erase(last, edges_.end());
  g.self_loops_ = self_loops_;

  g.slot_layers_.reserve(edges_.size());
  g.slot_schemas_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& r = edges_[e];
    if (g.schemas_.empty() || g.schemas_.back().u != r.u || g.schemas_.back().v != r.v) {
      g.schemas_.push_back({r.u, r.v});
      g.schema_offsets_.push_back(static_cast<SlotId>(e));
    }
    g.slot_layers_.push_back(r.l);
    g.slot_schemas_.push_back(static_cast<SchemaId>(g.schemas_.size() - 1));
  }
  g.schema_offsets_.push_back(static_cast<SlotId>(edges_.size()));

  // Slots are sorted by (u, v), so filling rows in slot order yields sorted rows.
  g.adj_offsets_.assign(num_layers, std::vector<std::size_t>(n + 1, 0));
  g.adj_nodes_.resize(num_layers);
  g.adj_slots_.resize(num_layers);
  for (const auto& r : edges_) {
    ++g.adj_offsets_[r.l][r.u + 1];
    ++g.adj_offsets_[r.l][r.v + 1];
  }
  for (std::size_t l = 0; l < num_layers; ++l) {
    auto& off = g.adj_offsets_[l];
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
    g.adj_nodes_[l].resize(off[n]);
    g.adj_slots_[l].resize(off[n]);
  }
  {
    std::vector<std::vector<std::size_t>> fill(num_layers);
    for (std::size_t l = 0; l < num_layers; ++l)
      fill[l].assign(g.adj_offsets_[l].begin(), g.adj_offsets_[l].end() - 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& r = edges_[e];
      auto& f = fill[r.l];
      g.adj_nodes_[r.l][f[r.u]] = r.v;
      g.adj_slots_[r.l][f[r.u]++] = static_cast<SlotId>(e);
      g.adj_nodes_[r.l][f[r.v]] = r.u;
      g.adj_slots_[r.l][f[r.v]++] = static_cast<SlotId>(e);
    }
  }

  g.union_offsets_.assign(n + 1, 0);
  for (const auto& s : g.schemas_) {
    ++g.union_offsets_[s.u + 1];
    ++g.union_offsets_[s.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.union_offsets_[i + 1] += g.union_offsets_[i];
  g.union_nodes_.resize(g.union_offsets_[n]);
  g.union_schemas_.resize(g.union_offsets_[n]);
  {
    std::vector<std::size_t> fill(g.union_offsets_.begin(), g.union_offsets_.end() - 1);
    for (std::size_t s = 0; s < g.schemas_.size(); ++s) {
      auto [u, v] = g.schemas_[s];
      g.union_nodes_[fill[u]] = v;
      g.union_schemas_[fill[u]++] = static_cast<SchemaId>(s);
      g.union_nodes_[fill[v]] = u;
      g.union_schemas_[fill[v]++] = static_cast<SchemaId>(s);
    }
  }

  detail::Fnv1a h;
  h.u32(static_cast<std::uint32_t>(n));
  h.u32(static_cast<std::uint32_t>(num_layers));
  for (const auto& s : node_labels_) h.str(s);
  for (const auto& s : layer_labels_) h.str(s);
  for (const auto& r : edges_) {
    h.u32(r.u);
    h.u32(r.v);
    h.u32(r.l);
  }
  g.fingerprint_ = {n, edges_.size(), h.value()};

  g.node_labels_ = std::move(node_labels_);
  g.layer_labels_ = std::move(layer_labels_);
  g.node_ids_ = std::move(node_ids_);
  *this = Builder();
  return g;
}

MultilayerGraph parse_graph_text(std::string_view text) {
  MultilayerGraph::Builder b;
  std::vector<std::string_view> tok;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    tokenize(line, tok);
    if (tok.empty()) return;
    if (tok.size() != 3)
      throw ParseError(line_no, "expected `layer src dst`, got " + std::to_string(tok.size()) +
                                    " tokens");
    b.add_edge(tok[0], tok[1], tok[2]);
  });
  return b.build();
}

MultilayerGraph parse_graph(std::istream& in) {
  std::string text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
  return parse_graph_text(text);
}

MultilayerGraph load_graph(const std::filesystem::path& path) {
  return parse_graph_text(read_file(path));
}

void write_edge_list(const MultilayerGraph& g, std::ostream& out) {
  for (SchemaId s = 0; s < g.num_schemas(); ++s) {
    auto [u, v] = g.schema(s);
    for (LayerId l : g.schema_layers(s))
      out << g.layer_label(l) << ' ' << g.node_label(u) << ' ' << g.node_label(v) << '\n';
  }
}

AttributeTable::AttributeTable(std::size_t num_nodes, std::size_t dim)
    : dim_(dim), values_(num_nodes * dim, 0.0), has_row_(num_nodes, false), zero_(dim, 0.0) {}

std::span<const double> AttributeTable::operator[](NodeId v) const {
  if (!has_row(v)) return {zero_.data(), dim_};
  return {values_.data() + static_cast<std::size_t>(v) * dim_, dim_};
}

void AttributeTable::set(NodeId v, std::span<const double> values) {
  if (values.size() != dim_) throw ValidationError("attribute dimension mismatch");
  std::copy(values.begin(), values.end(), values_.begin() + static_cast<std::size_t>(v) * dim_);
  has_row_[v] = true;
}

AttributeTable parse_attributes(std::istream& in, const MultilayerGraph& g) {
  std::string text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
  struct Row {
    NodeId node;
    std::vector<double> values;
  };
  std::vector<Row> rows;
  std::optional<std::size_t> dim;
  std::vector<std::string_view> tok;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    tokenize(line, tok);
    if (tok.empty()) return;
    if (tok.size() < 2) throw ParseError(line_no, "expected `node f1 ... fd`");
    auto node = g.find_node(tok[0]);
    if (!node)
      throw ValidationError("line " + std::to_string(line_no) + ": unknown node `" +
                            std::string(tok[0]) + "`");
    Row row{*node, {}};
    for (std::size_t i = 1; i < tok.size(); ++i) {
      std::string s(tok[i]);
      char* end = nullptr;
      double x = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size()) throw ParseError(line_no, "not a number: `" + s + "`");
      if (!std::isfinite(x) || x < 0)
        throw ValidationError("line " + std::to_string(line_no) +
                              ": attribute entries must be finite and non-negative");
      row.values.push_back(x);
    }
    if (dim && *dim != row.values.size())
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(*dim) + " attributes, got " +
                            std::to_string(row.values.size()));
    dim = row.values.size();
    rows.push_back(std::move(row));
  });
  AttributeTable table(g.num_nodes(), dim.value_or(0));
  for (const auto& r : rows) table.set(r.node, r.values);
  return table;
}

AttributeTable load_attributes(const std::filesystem::path& path, const MultilayerGraph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return parse_attributes(in, g);
}

std::vector<std::vector<NodeId>> load_ground_truth(const std::filesystem::path& path,
                                                   const MultilayerGraph& g) {
  std::string text = read_file(path);
  std::vector<std::vector<NodeId>> out;
  std::vector<std::string_view> tok;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    tokenize(line, tok);
    if (tok.empty()) return;
    std::vector<NodeId> community;
    for (auto t : tok) {
      auto v = g.find_node(t);
      if (!v)
        throw ValidationError("line " + std::to_string(line_no) + ": unknown node `" +
                              std::string(t) + "`");
      community.push_back(*v);
    }
    std::sort(community.begin(), community.end());
    community.erase(std::unique(community.begin(), community.end()), community.end());
    out.push_back(std::move(community));
  });
  return out;
}

DegreeVector degree_vector(const MultilayerGraph& g, const VertexSubset& subset, NodeId v) {
  if (!subset.contains(v)) throw std::domain_error("degree_vector: node outside subset");
  DegreeVector deg(g.num_layers(), 0);
  for (LayerId l = 0; l < g.num_layers(); ++l)
    for (NodeId w : g.neighbors(l, v))
      if (subset.contains(w)) ++deg[l];
  return deg;
}

std::uint32_t top_lambda(std::span<const std::uint32_t> values, std::size_t lambda) {
  if (lambda < 1 || lambda > values.size())
    throw std::domain_error("top_lambda: lambda out of range");
  std::vector<std::uint32_t> v(values.begin(), values.end());
  std::nth_element(v.begin(), v.begin() + (lambda - 1), v.end(), std::greater<>());
  return v[lambda - 1];
}

std::vector<NodeId> resolve_labels(const MultilayerGraph& g, std::span<const std::string> labels) {
  std::vector<NodeId> out;
  for (const auto& s : labels) {
    auto v = g.find_node(s);
    if (!v) throw ValidationError("unknown node `" + s + "`");
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace firmml
