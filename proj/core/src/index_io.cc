#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "json.hpp"

#include "firmml/errors.h"
#include "firmml/firmcore.h"
#include "firmml/firmtruss.h"
#include "hash.h"

// Binary layout shared by both index kinds, all integers little-endian:
//   magic[4] u32 version u32 nodes u64 edges u64 graph_hash u32 layers u32 records
//   records...
//   u64 FNV-1a of every preceding byte
// A FirmTruss record is u32 u, u32 v, u16 count, count x (u32 k, u16 λ).
// A FirmCore record is u16 count, count x (u32 k, u16 λ), one per node in id order.

namespace firmml {

namespace {

constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void u16(std::uint16_t x) { put(x, 2); }
  void u32(std::uint32_t x) { put(x, 4); }
  void u64(std::uint64_t x) { put(x, 8); }
  void raw(const char* s, std::size_t n) { buf_.append(s, n); }
  const std::string& bytes() const { return buf_; }

 private:
  void put(std::uint64_t x, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
  }
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw CorruptIndex("index file is truncated");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t x = 0;
    for (int i = 0; i < n; ++i)
      x |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return x;
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_pairs(Writer& w, const std::vector<SkylinePair>& pairs) {
  w.u16(static_cast<std::uint16_t>(pairs.size()));
  for (const auto& p : pairs) {
    w.u32(p.k);
    w.u16(static_cast<std::uint16_t>(p.lambda));
  }
}

std::vector<SkylinePair> read_pairs(Reader& r, std::uint32_t num_layers) {
  std::vector<SkylinePair> pairs(r.u16());
  for (auto& p : pairs) {
    p.k = r.u32();
    p.lambda = r.u16();
    if (p.lambda < 1 || p.lambda > num_layers) throw CorruptIndex("skyline pair out of range");
  }
  return pairs;
}

void write_header(Writer& w, const char* magic, const GraphFingerprint& fp, std::uint32_t layers,
                  std::uint32_t records) {
  w.raw(magic, 4);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(fp.nodes));
  w.u64(fp.edges);
  w.u64(fp.hash);
  w.u32(layers);
  w.u32(records);
}

void finish(Writer& w, const std::filesystem::path& path) {
  detail::Fnv1a h;
  h.bytes(w.bytes().data(), w.bytes().size());
  w.u64(h.value());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw ValidationError("cannot write " + path.string());
}

struct Header {
  GraphFingerprint fingerprint;
  std::uint32_t layers;
  std::uint32_t records;
};

// Reads the file, verifies magic, version and trailing hash.
std::string open_checked(const std::filesystem::path& path, const char* magic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptIndex("cannot open index " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 4 + 4 + 8 || std::memcmp(data.data(), magic, 4) != 0)
    throw CorruptIndex("bad index magic");
  Reader tail(std::string_view(data).substr(data.size() - 8));
  detail::Fnv1a h;
  h.bytes(data.data(), data.size() - 8);
  if (tail.u64() != h.value()) throw CorruptIndex("index content hash mismatch");
  data.resize(data.size() - 8);
  return data;
}

Header read_header(Reader& r) {
  r.raw(4);
  if (r.u32() != kVersion) throw CorruptIndex("unsupported index version");
  Header h;
  h.fingerprint.nodes = r.u32();
  h.fingerprint.edges = r.u64();
  h.fingerprint.hash = r.u64();
  h.layers = r.u32();
  h.records = r.u32();
  return h;
}

nlohmann::json pairs_json(const std::vector<SkylinePair>& pairs) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pairs) arr.push_back({p.k, p.lambda});
  return arr;
}

}  // namespace

void index_write(const SkylineIndex& index, const std::filesystem::path& path) {
  Writer w;
  write_header(w, "FTSI", index.fingerprint, index.num_layers,
               static_cast<std::uint32_t>(index.schemas.size()));
  for (std::size_t s = 0; s < index.schemas.size(); ++s) {
    w.u32(index.schemas[s].u);
    w.u32(index.schemas[s].v);
    write_pairs(w, index.pairs[s]);
  }
  finish(w, path);
}

SkylineIndex index_read(const std::filesystem::path& path) {
  std::string data = open_checked(path, "FTSI");
  Reader r(data);
  Header h = read_header(r);
  SkylineIndex index;
  index.fingerprint = h.fingerprint;
  index.num_layers = h.layers;
  index.num_nodes = static_cast<std::uint32_t>(h.fingerprint.nodes);
  index.schemas.resize(h.records);
  index.pairs.resize(h.records);
  for (std::uint32_t s = 0; s < h.records; ++s) {
    index.schemas[s].u = r.u32();
    index.schemas[s].v = r.u32();
    index.pairs[s] = read_pairs(r, h.layers);
  }
  if (r.remaining() != 0) throw CorruptIndex("trailing bytes in index");
  return index;
}

std::string index_to_json(const MultilayerGraph& g, const SkylineIndex& index) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t s = 0; s < index.schemas.size(); ++s) {
    auto [u, v] = index.schemas[s];
    j[g.node_label(u) + "," + g.node_label(v)] = pairs_json(index.pairs[s]);
  }
  return j.dump();
}

void coreness_write(const SkylineCoreness& index, const std::filesystem::path& path) {
  Writer w;
  write_header(w, "FCSI", index.fingerprint, index.num_layers,
               static_cast<std::uint32_t>(index.pairs.size()));
  for (const auto& pairs : index.pairs) write_pairs(w, pairs);
  finish(w, path);
}

SkylineCoreness coreness_read(const std::filesystem::path& path) {
  std::string data = open_checked(path, "FCSI");
  Reader r(data);
  Header h = read_header(r);
  SkylineCoreness index;
  index.fingerprint = h.fingerprint;
  index.num_layers = h.layers;
  index.pairs.resize(h.records);
  for (auto& pairs : index.pairs) pairs = read_pairs(r, h.layers);
  if (r.remaining() != 0) throw CorruptIndex("trailing bytes in index");
  return index;
}

std::string coreness_to_json(const MultilayerGraph& g, const SkylineCoreness& index) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t v = 0; v < index.pairs.size(); ++v)
    j[g.node_label(static_cast<NodeId>(v))] = pairs_json(index.pairs[v]);
  return j.dump();
}

}  // namespace firmml
