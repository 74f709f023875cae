#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace demograph {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

// Opaque string user-ids are interned to dense indices at ingestion; all
// downstream structures are arrays indexed by NodeId. Ids are assigned in
// first-appearance order of the (fixed) record stream, which makes them
// deterministic for a given input.
class Interner {
 public:
  NodeId intern(std::string_view id) {
    auto it = map_.find(id);
    if (it != map_.end()) return it->second;
    const NodeId nid = static_cast<NodeId>(ids_.size());
    ids_.emplace_back(id);
    map_.emplace(ids_.back(), nid);
    return nid;
  }

  NodeId lookup(std::string_view id) const {
    auto it = map_.find(id);
    return it == map_.end() ? kNoNode : it->second;
  }

  const std::string& name(NodeId id) const { return ids_[id]; }
  std::size_t size() const { return ids_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  // Values own their key copies; transparent lookup avoids per-probe
  // allocations on the hot ingestion path.
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> map_;
  std::vector<std::string> ids_;
};

}  // namespace demograph
