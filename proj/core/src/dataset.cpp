#include "demograph/dataset.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "demograph/common.hpp"

namespace demograph {
namespace {

// Chunk-local parse output. Ids are shard-local, assigned in first-appearance
// order; the merge step replays shards in file order, so the global ids come
// out exactly as a single sequential pass would assign them.
struct RawCall {
  std::uint32_t a, b;  // caller, callee (shard-local)
  std::int64_t t;
  std::uint32_t dur;
};

struct RawText {
  std::uint32_t a, b;  // sender, receiver (shard-local)
  std::int64_t t;
};

struct Shard {
  std::vector<std::string_view> names;  // local id -> id text (views into buffer)
  std::vector<RawCall> calls;
  std::vector<RawText> texts;
  RejectCounters rejects;
  std::int64_t min_t = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_t = std::numeric_limits<std::int64_t>::min();
};

struct LocalInterner {
  explicit LocalInterner(std::vector<std::string_view>& names) : names_(names) {}

  std::uint32_t intern(std::string_view s) {
    auto [it, fresh] = map_.try_emplace(s, static_cast<std::uint32_t>(names_.size()));
    if (fresh) names_.push_back(s);
    return it->second;
  }

 private:
  std::unordered_map<std::string_view, std::uint32_t> map_;
  std::vector<std::string_view>& names_;
};

// Splits buf near `target` bytes per shard, always on line boundaries.
std::vector<std::pair<std::size_t, std::size_t>> shard_ranges(
    std::string_view buf, std::size_t target) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (target == 0) target = 1;
  std::size_t begin = 0;
  while (begin < buf.size()) {
    std::size_t end = begin + target;
    if (end >= buf.size()) {
      end = buf.size();
    } else {
      std::size_t nl = buf.find('\n', end);
      end = (nl == std::string_view::npos) ? buf.size() : nl + 1;
    }
    out.emplace_back(begin, end);
    begin = end;
  }
  return out;
}

// Calls fn(line) for each line in [begin, end), with trailing \r stripped
// and empty lines skipped.
template <typename Fn>
void for_each_line(std::string_view buf, std::size_t begin, std::size_t end, Fn&& fn) {
  std::size_t pos = begin;
  while (pos < end) {
    std::size_t nl = buf.find('\n', pos);
    std::size_t stop = (nl == std::string_view::npos || nl >= end) ? end : nl;
    std::string_view line = buf.substr(pos, stop - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(line);
    pos = (nl == std::string_view::npos || nl >= end) ? end : nl + 1;
  }
}

void parse_cdr_shard(std::string_view buf, std::size_t begin, std::size_t end,
                     std::int64_t wb, std::int64_t we, Shard& out) {
  LocalInterner li(out.names);
  for_each_line(buf, begin, end, [&](std::string_view line) {
    auto rec = parse_cdr_line(line, &out.rejects);
    if (!rec) return;
    if (rec->timestamp < wb || rec->timestamp >= we) {
      ++out.rejects.out_of_window;
      return;
    }
    const std::uint32_t a = li.intern(rec->caller);
    const std::uint32_t b = li.intern(rec->callee);
    out.calls.push_back({a, b, rec->timestamp, rec->duration});
    out.min_t = std::min(out.min_t, rec->timestamp);
    out.max_t = std::max(out.max_t, rec->timestamp);
  });
}

void parse_sms_shard(std::string_view buf, std::size_t begin, std::size_t end,
                     std::int64_t wb, std::int64_t we, Shard& out) {
  LocalInterner li(out.names);
  for_each_line(buf, begin, end, [&](std::string_view line) {
    auto rec = parse_sms_line(line, &out.rejects);
    if (!rec) return;
    if (rec->timestamp < wb || rec->timestamp >= we) {
      ++out.rejects.out_of_window;
      return;
    }
    const std::uint32_t a = li.intern(rec->sender);
    const std::uint32_t b = li.intern(rec->receiver);
    out.texts.push_back({a, b, rec->timestamp});
    out.min_t = std::min(out.min_t, rec->timestamp);
    out.max_t = std::max(out.max_t, rec->timestamp);
  });
}

std::vector<Shard> parse_file(std::string_view buf, bool is_cdr,
                              const IngestOptions& opt) {
  auto ranges = shard_ranges(buf, opt.chunk_bytes);
  std::vector<Shard> shards(ranges.size());
  parallel_chunks(
      ranges.size(), 1,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) {
          if (is_cdr)
            parse_cdr_shard(buf, ranges[c].first, ranges[c].second,
                            opt.window_begin, opt.window_end, shards[c]);
          else
            parse_sms_shard(buf, ranges[c].first, ranges[c].second,
                            opt.window_begin, opt.window_end, shards[c]);
        }
      },
      opt.max_threads);
  return shards;
}

// Contact-day marks are packed into one u64 so a sort groups them by
// (user, channel, day, direction): user in the top 32 bits, channel below,
// then the day number (offset so it is non-negative for any 4-digit year),
// direction in the low bit.
constexpr std::uint64_t kDayBias = 719468;  // -day_of(year 0) in days

std::uint64_t day_mark(NodeId user, int channel, std::int64_t t, int dir_out) {
  const std::uint64_t day = static_cast<std::uint64_t>(day_of(t) + kDayBias);
  return (static_cast<std::uint64_t>(user) << 24) |
         (static_cast<std::uint64_t>(channel) << 23) | (day << 1) |
         static_cast<std::uint64_t>(dir_out);
}

void fold_contact_days(std::vector<std::uint64_t>& marks, Dataset& ds) {
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  std::size_t i = 0;
  const std::size_t m = marks.size();
  while (i < m) {
    const std::uint64_t uc = marks[i] >> 23;  // user and channel together
    std::uint32_t in_days = 0, out_days = 0, any_days = 0;
    std::uint64_t prev_day = ~0ull;
    for (; i < m && (marks[i] >> 23) == uc; ++i) {
      const std::uint64_t day = (marks[i] >> 1) & 0x3fffffull;
      if (day != prev_day) {
        ++any_days;
        prev_day = day;
      }
      if (marks[i] & 1)
        ++out_days;
      else
        ++in_days;
    }
    auto& cd = ds.activity[static_cast<NodeId>(uc >> 1)].contact_days[uc & 1];
    cd[0] = in_days;
    cd[1] = out_days;
    cd[2] = any_days;
  }
}

// Shared body behind ingest() and ingest_buffers().  When the caller owns
// the log text (file path case) it passes the strings so they can be
// released once the shards are consumed; borrowed views pass nullptr.
Dataset ingest_views(std::string_view cdr, std::string_view sms,
                     std::string_view clients, std::string_view truth,
                     const IngestOptions& opt, std::string* owned_cdr,
                     std::string* owned_sms) {
  Dataset ds;

  std::vector<Shard> cdr_shards, sms_shards;
  if (!cdr.empty()) cdr_shards = parse_file(cdr, true, opt);
  if (!sms.empty()) sms_shards = parse_file(sms, false, opt);

  GraphBuilder gb;
  std::uint64_t total_events = 0;
  for (const Shard& s : cdr_shards) total_events += s.calls.size();
  for (const Shard& s : sms_shards) total_events += s.texts.size();
  std::vector<std::uint64_t> marks;
  marks.reserve(2 * total_events);

  std::vector<NodeId> remap;
  auto consume = [&](Shard& s) {
    remap.clear();
    remap.reserve(s.names.size());
    for (std::string_view name : s.names) remap.push_back(ds.users.intern(name));
    if (ds.activity.size() < ds.users.size()) ds.activity.resize(ds.users.size());

    for (const RawCall& rc : s.calls) {
      const NodeId a = remap[rc.a], b = remap[rc.b];
      gb.add_call(a, b, rc.dur);
      const int w = static_cast<int>(classify_time_window(rc.t));
      UserActivity& ua = ds.activity[a];
      UserActivity& ub = ds.activity[b];
      ++ua.calls[1][w];
      ua.call_seconds[1][w] += rc.dur;
      ++ub.calls[0][w];
      ub.call_seconds[0][w] += rc.dur;
      marks.push_back(day_mark(a, 0, rc.t, 1));
      marks.push_back(day_mark(b, 0, rc.t, 0));
    }
    for (const RawText& rt : s.texts) {
      const NodeId a = remap[rt.a], b = remap[rt.b];
      gb.add_sms(a, b);
      const int w = static_cast<int>(classify_time_window(rt.t));
      ++ds.activity[a].sms[1][w];
      ++ds.activity[b].sms[0][w];
      marks.push_back(day_mark(a, 1, rt.t, 1));
      marks.push_back(day_mark(b, 1, rt.t, 0));
    }

    ds.accepted_calls += s.calls.size();
    ds.accepted_sms += s.texts.size();
    ds.min_time = std::min(ds.min_time, s.min_t);
    ds.max_time = std::max(ds.max_time, s.max_t);
    ds.rejects.add(s.rejects);
    // Shard payload is no longer needed; return the memory eagerly so the
    // peak stays near one shard of raw records.
    s = Shard{};
  };
  for (Shard& s : cdr_shards) consume(s);
  for (Shard& s : sms_shards) consume(s);
  if (owned_cdr) {
    owned_cdr->clear();
    owned_cdr->shrink_to_fit();
  }
  if (owned_sms) {
    owned_sms->clear();
    owned_sms->shrink_to_fit();
  }

  const std::uint32_t n = ds.num_users();
  ds.graph = gb.build(n);
  fold_contact_days(marks, ds);

  ds.is_client.assign(n, 1);
  ds.clients.resize(n);
  for (NodeId i = 0; i < n; ++i) ds.clients[i] = i;
  if (!clients.empty()) load_clients_text(ds, clients);

  ds.has_label.assign(n, 0);
  ds.labels.assign(n, DemographicLabel{});
  if (!truth.empty())
    load_ground_truth_text(ds, truth, opt.min_age, opt.max_age);
  return ds;
}

}  // namespace

Dataset ingest(const IngestOptions& opt) {
  std::string cdr_buf, sms_buf, clients_buf, truth_buf;
  if (!opt.cdr_path.empty()) cdr_buf = read_text_file(opt.cdr_path);
  if (!opt.sms_path.empty()) sms_buf = read_text_file(opt.sms_path);
  if (!opt.clients_path.empty()) clients_buf = read_text_file(opt.clients_path);
  if (!opt.truth_path.empty()) truth_buf = read_text_file(opt.truth_path);
  return ingest_views(cdr_buf, sms_buf, clients_buf, truth_buf, opt, &cdr_buf,
                      &sms_buf);
}

Dataset ingest_buffers(std::string_view cdr, std::string_view sms,
                       std::string_view clients, std::string_view truth,
                       const IngestOptions& opt) {
  return ingest_views(cdr, sms, clients, truth, opt, nullptr, nullptr);
}

void load_clients_text(Dataset& ds, std::string_view buf) {
  ds.is_client.assign(ds.num_users(), 0);
  ds.clients.clear();
  for_each_line(buf, 0, buf.size(), [&](std::string_view line) {
    const NodeId id = ds.users.lookup(line);
    if (id == kNoNode) {
      ++ds.rejects.subset_violation;
      return;
    }
    ds.is_client[id] = 1;
  });
  for (NodeId i = 0; i < ds.num_users(); ++i)
    if (ds.is_client[i]) ds.clients.push_back(i);
}

void load_clients(Dataset& ds, const std::string& path) {
  const std::string buf = read_text_file(path);
  load_clients_text(ds, buf);
}

void load_ground_truth_text(Dataset& ds, std::string_view buf, int min_age,
                            int max_age) {
  const std::uint32_t n = ds.num_users();
  if (ds.has_label.size() != n) {
    ds.has_label.assign(n, 0);
    ds.labels.assign(n, DemographicLabel{});
  }
  ds.labeled.clear();
  for_each_line(buf, 0, buf.size(), [&](std::string_view line) {
    auto row = parse_ground_truth_line(line, min_age, max_age, &ds.rejects);
    if (!row) return;
    const NodeId id = ds.users.lookup(row->user);
    if (id == kNoNode || !ds.is_client[id]) {
      ++ds.rejects.subset_violation;
      return;
    }
    if (ds.has_label[id]) ++ds.rejects.duplicate_label;
    ds.has_label[id] = 1;
    ds.labels[id] = row->label;
  });
  for (NodeId i = 0; i < n; ++i)
    if (ds.has_label[i]) ds.labeled.push_back(i);
}

void load_ground_truth(Dataset& ds, const std::string& path, int min_age,
                       int max_age) {
  const std::string buf = read_text_file(path);
  load_ground_truth_text(ds, buf, min_age, max_age);
}

}  // namespace demograph
