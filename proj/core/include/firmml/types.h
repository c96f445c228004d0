#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace firmml {

using NodeId = std::uint32_t;
using LayerId = std::uint32_t;
using SchemaId = std::uint32_t;
// One (edge schema, layer) instance. Slots of a schema are contiguous.
using SlotId = std::uint32_t;
using Distance = std::uint32_t;

inline constexpr Distance kInfiniteDistance = std::numeric_limits<Distance>::max();

enum class Structure { kFirmTruss, kFirmCore };

// Bitset over a dense id range with a cached population count.
template <class Tag>
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe, bool full = false)
      : bits_(universe, full), count_(full ? universe : 0) {}

  static IdSet of(std::size_t universe, std::span<const std::uint32_t> ids) {
    IdSet s(universe);
    for (auto id : ids) s.insert(id);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::uint32_t id) const { return id < bits_.size() && bits_[id]; }

  bool insert(std::uint32_t id) {
    if (bits_[id]) return false;
    bits_[id] = true;
    ++count_;
    return true;
  }

  bool erase(std::uint32_t id) {
    if (!bits_[id]) return false;
    bits_[id] = false;
    --count_;
    return true;
  }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  bool is_subset_of(const IdSet& other) const {
    if (count_ > other.count_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.contains(static_cast<std::uint32_t>(i))) return false;
    return true;
  }

  friend bool operator==(const IdSet& a, const IdSet& b) {
    return a.count_ == b.count_ && a.bits_ == b.bits_;
  }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

using VertexSubset = IdSet<struct VertexTag>;
using SchemaSet = IdSet<struct SchemaTag>;

}  // namespace firmml
