#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "demograph/graph.hpp"
#include "demograph/interner.hpp"
#include "demograph/records.hpp"
#include "demograph/time_windows.hpp"

namespace demograph {

// Windowed traffic totals for one user. A record credits both endpoints:
// the originator's outgoing cells and the receiver's incoming cells, always
// in the window of the event's start timestamp. The direction annotation on
// a record marks whose log it came from and plays no role here; flow is
// defined by the (caller, callee) field order.
struct UserActivity {
  // [direction: 0 = incoming, 1 = outgoing][TimeWindow]
  std::uint32_t calls[2][kNumWindows] = {};
  std::uint64_t call_seconds[2][kNumWindows] = {};
  std::uint32_t sms[2][kNumWindows] = {};
  // Distinct calendar days with at least one event,
  // [channel: 0 = call, 1 = sms][span: 0 = in, 1 = out, 2 = either].
  std::uint32_t contact_days[2][3] = {};
};

// The loaded world: every id seen in traffic (N_T), the operator-client
// subset with feature rows (N_O), and the labeled subset (N_GT), with
// N_GT included in N_O included in N_T enforced at load time.
struct Dataset {
  Interner users;
  SocialGraph graph;
  std::vector<UserActivity> activity;  // indexed by NodeId, size num_users()

  std::vector<std::uint8_t> is_client;  // N_O membership mask
  std::vector<NodeId> clients;          // ascending

  std::vector<std::uint8_t> has_label;     // N_GT membership mask
  std::vector<DemographicLabel> labels;    // valid where has_label
  std::vector<NodeId> labeled;             // ascending

  std::int64_t min_time = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_time = std::numeric_limits<std::int64_t>::min();
  std::uint64_t accepted_calls = 0;
  std::uint64_t accepted_sms = 0;
  RejectCounters rejects;

  std::uint32_t num_users() const { return static_cast<std::uint32_t>(users.size()); }

  // Days spanned by the accepted events (0 for an empty dataset).
  std::int64_t observed_days() const {
    if (min_time > max_time) return 0;
    return day_of(max_time) - day_of(min_time) + 1;
  }
};

struct IngestOptions {
  std::string cdr_path;      // empty = no call log
  std::string sms_path;      // empty = no SMS log
  std::string clients_path;  // empty = every seen user is a client
  std::string truth_path;    // empty = no labels
  int min_age = 10;
  int max_age = 100;
  // Optional observation window [window_begin, window_end); events outside
  // are rejected. Defaults accept everything.
  std::int64_t window_begin = std::numeric_limits<std::int64_t>::min();
  std::int64_t window_end = std::numeric_limits<std::int64_t>::max();
  std::size_t chunk_bytes = 8u << 20;  // parse shard size
  unsigned max_threads = 0;            // 0 = hardware concurrency
};

// Full load: parse logs (parallel per shard, merged in shard order so ids
// and counters never depend on thread schedule), build the graph and
// per-user activity, then apply the client list and ground truth.
Dataset ingest(const IngestOptions& opt);

// Same pipeline over in-memory CSV text (the path fields of opt are
// ignored); empty views mean "absent".
Dataset ingest_buffers(std::string_view cdr, std::string_view sms,
                       std::string_view clients, std::string_view truth,
                       const IngestOptions& opt = {});

// Marks N_O from one user-id per line. Ids never seen in traffic are
// rejected (subset_violation). Resets any previous client set.
void load_clients(Dataset& ds, const std::string& path);
void load_clients_text(Dataset& ds, std::string_view buf);

// Loads user_id,gender,age rows. Rows for non-clients are rejected
// (subset_violation); a repeated user-id overwrites and counts as
// duplicate_label (last row wins).
void load_ground_truth(Dataset& ds, const std::string& path, int min_age = 10,
                       int max_age = 100);
void load_ground_truth_text(Dataset& ds, std::string_view buf, int min_age = 10,
                            int max_age = 100);

}  // namespace demograph
