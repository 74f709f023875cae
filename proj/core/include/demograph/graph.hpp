#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "demograph/interner.hpp"

namespace demograph {

// Directed traffic counters for one undirected edge, stored once in the
// canonical a < b orientation.
struct EdgeCounters {
  std::uint32_t calls_ab = 0;
  std::uint32_t calls_ba = 0;
  std::uint64_t call_seconds_ab = 0;
  std::uint64_t call_seconds_ba = 0;
  std::uint32_t sms_ab = 0;
  std::uint32_t sms_ba = 0;
};

// Undirected, unweighted communication graph in CSR form. An edge exists iff
// any call or SMS was exchanged between the pair (weight 1); the per-edge
// directed counters exist only to serve the in/out feature splits. No
// self-loops; adjacency lists are sorted ascending, which fixes the
// reduction order everywhere neighbors are folded.
class SocialGraph {
 public:
  std::uint32_t num_nodes() const { return num_nodes_; }
  std::uint64_t num_edges() const { return static_cast<std::uint64_t>(edges_.size()); }

  std::span<const NodeId> neighbors(NodeId x) const {
    return {adjacency_.data() + offsets_[x],
            adjacency_.data() + offsets_[x + 1]};
  }

  std::span<const std::uint32_t> edge_ids(NodeId x) const {
    return {edge_index_.data() + offsets_[x],
            edge_index_.data() + offsets_[x + 1]};
  }

  std::uint32_t degree(NodeId x) const {
    return static_cast<std::uint32_t>(offsets_[x + 1] - offsets_[x]);
  }

  // w_{x,y}: 1 iff any communication exists. Symmetric by construction.
  int weight(NodeId x, NodeId y) const;

  const EdgeCounters& counters(std::uint32_t edge_id) const {
    return edges_[edge_id];
  }

  // (calls, seconds, sms) sent from x to y along stored edge edge_id, where
  // y is the stored neighbor; resolves the canonical orientation.
  struct DirectedView {
    std::uint32_t calls;
    std::uint64_t call_seconds;
    std::uint32_t sms;
  };
  DirectedView outbound(NodeId x, NodeId y, std::uint32_t edge_id) const {
    const EdgeCounters& c = edges_[edge_id];
    if (x < y) return {c.calls_ab, c.call_seconds_ab, c.sms_ab};
    return {c.calls_ba, c.call_seconds_ba, c.sms_ba};
  }

  std::uint64_t total_call_seconds() const;

  friend class GraphBuilder;

 private:
  std::uint32_t num_nodes_ = 0;
  std::vector<std::uint64_t> offsets_;     // num_nodes_ + 1
  std::vector<NodeId> adjacency_;          // 2 * num_edges, sorted per row
  std::vector<std::uint32_t> edge_index_;  // parallel to adjacency_
  std::vector<EdgeCounters> edges_;        // canonical a < b
};

// Streaming pair aggregation. add_* may be called from a merge of shard
// aggregates or a single sequential pass; the final CSR is canonical (sorted)
// so the build result does not depend on insertion order.
class GraphBuilder {
 public:
  void add_call(NodeId from, NodeId to, std::uint32_t seconds) {
    EdgeCounters& c = slot(from, to);
    if (from < to) {
      ++c.calls_ab;
      c.call_seconds_ab += seconds;
    } else {
      ++c.calls_ba;
      c.call_seconds_ba += seconds;
    }
  }

  void add_sms(NodeId from, NodeId to) {
    EdgeCounters& c = slot(from, to);
    if (from < to)
      ++c.sms_ab;
    else
      ++c.sms_ba;
  }

  // Merge another builder's pairs into this one (associative, commutative).
  void merge(const GraphBuilder& other);

  // num_nodes must cover every id that appeared in any record.
  SocialGraph build(std::uint32_t num_nodes) const;

  std::size_t pair_count() const { return pairs_.size(); }

 private:
  static std::uint64_t key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  EdgeCounters& slot(NodeId from, NodeId to) { return pairs_[key(from, to)]; }

  std::unordered_map<std::uint64_t, EdgeCounters> pairs_;
};

}  // namespace demograph
