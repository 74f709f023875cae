#include "demograph/graph.hpp"

#include <algorithm>

namespace demograph {

int SocialGraph::weight(NodeId x, NodeId y) const {
  if (x >= num_nodes_ || y >= num_nodes_ || x == y) return 0;
  auto nb = neighbors(x);
  return std::binary_search(nb.begin(), nb.end(), y) ? 1 : 0;
}

std::uint64_t SocialGraph::total_call_seconds() const {
  std::uint64_t total = 0;
  for (const EdgeCounters& c : edges_) total += c.call_seconds_ab + c.call_seconds_ba;
  return total;
}

void GraphBuilder::merge(const GraphBuilder& other) {
  for (const auto& [k, c] : other.pairs_) {
    EdgeCounters& dst = pairs_[k];
    dst.calls_ab += c.calls_ab;
    dst.calls_ba += c.calls_ba;
    dst.call_seconds_ab += c.call_seconds_ab;
    dst.call_seconds_ba += c.call_seconds_ba;
    dst.sms_ab += c.sms_ab;
    dst.sms_ba += c.sms_ba;
  }
}

SocialGraph GraphBuilder::build(std::uint32_t num_nodes) const {
  SocialGraph g;
  g.num_nodes_ = num_nodes;

  // Canonicalize pair order so the edge array (and hence every edge id) is
  // independent of hash-map iteration order.
  std::vector<std::uint64_t> keys;
  keys.reserve(pairs_.size());
  for (const auto& [k, c] : pairs_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());

  g.edges_.reserve(keys.size());
  g.offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  for (std::uint64_t k : keys) {
    g.edges_.push_back(pairs_.at(k));
    NodeId a = static_cast<NodeId>(k >> 32);
    NodeId b = static_cast<NodeId>(k & 0xffffffffu);
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::size_t i = 1; i < g.offsets_.size(); ++i)
    g.offsets_[i] += g.offsets_[i - 1];

  g.adjacency_.resize(2 * keys.size());
  g.edge_index_.resize(2 * keys.size());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::uint32_t e = 0; e < keys.size(); ++e) {
    NodeId a = static_cast<NodeId>(keys[e] >> 32);
    NodeId b = static_cast<NodeId>(keys[e] & 0xffffffffu);
    g.adjacency_[cursor[a]] = b;
    g.edge_index_[cursor[a]] = e;
    ++cursor[a];
    g.adjacency_[cursor[b]] = a;
    g.edge_index_[cursor[b]] = e;
    ++cursor[b];
  }
  // Keys were emitted in ascending (a, b) order, so each row's neighbor list
  // is already sorted for a: rows fill with increasing b. For b the incoming
  // a values also arrive ascending. No per-row sort needed.
  return g;
}

}  // namespace demograph
