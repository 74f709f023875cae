#include "demograph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "demograph/civil.hpp"
#include "demograph/common.hpp"
#include "demograph/rng.hpp"
#include "demograph/time_windows.hpp"

namespace demograph {

namespace {

// Substream kinds; the entity index lives in the low 40 bits.
constexpr std::uint64_t kStreamPopulation = 1ull << 40;
constexpr std::uint64_t kStreamEdges = 2ull << 40;
constexpr std::uint64_t kStreamEvents = 3ull << 40;

constexpr int kAgeFloor = 10;
// Age-group boundaries, matching AgeGroups::group_of.
constexpr int kGroupLo[4] = {10, 25, 35, 50};

const char* const kGenderKey[2] = {"m", "f"};
const char* const kKindKey[3] = {"calls", "sms", "secs"};
const char* const kWindowKey[3] = {"wd", "wn", "we"};

}  // namespace

SynthConfig::SynthConfig() {
  // Base rates per age group: texting falls and call duration grows with
  // age, call volume peaks in the middle groups during work hours. Values
  // are events per day per edge direction over a mean-degree-10 graph.
  static constexpr ActivityRates kBase[4] = {
      {{0.020, 0.030, 0.040}, {0.100, 0.140, 0.160}, {90, 120, 150}},
      {{0.045, 0.030, 0.030}, {0.060, 0.050, 0.050}, {150, 180, 170}},
      {{0.055, 0.025, 0.022}, {0.030, 0.020, 0.020}, {210, 240, 210}},
      {{0.038, 0.018, 0.020}, {0.012, 0.008, 0.010}, {300, 330, 300}},
  };
  // Gender asymmetry: men call slightly more and much longer, women text
  // more. Multipliers per [gender][calls, sms, secs].
  static constexpr double kGender[2][3] = {{1.15, 0.85, 1.25},
                                           {0.90, 1.12, 0.95}};
  for (int g = 0; g < 2; ++g)
    for (int grp = 0; grp < 4; ++grp)
      for (int w = 0; w < 3; ++w) {
        activity[g][grp].calls[w] = kBase[grp].calls[w] * kGender[g][0];
        activity[g][grp].sms[w] = kBase[grp].sms[w] * kGender[g][1];
        activity[g][grp].secs[w] = kBase[grp].secs[w] * kGender[g][2];
      }
}

void SynthConfig::validate() const {
  if (n_users < 1) throw DataError("synth: n_users must be at least 1");
  auto check_shares = [](const double* s, int n, const char* what) {
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      if (!(s[i] >= 0))
        throw DataError(std::string("synth: negative share in ") + what);
      sum += s[i];
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw DataError(std::string("synth: ") + what + " must sum to 1");
  };
  check_shares(gender_shares.data(), 2, "gender_shares");
  check_shares(pyramid_shares.data(), 4, "pyramid_shares");
  if (max_age < 50 || max_age > 100)
    throw DataError("synth: max_age must lie in [50, 100]");
  if (!(mean_degree >= 0)) throw DataError("synth: mean_degree must be >= 0");
  if (!(sigma_age > 0)) throw DataError("synth: sigma_age must be positive");
  if (!(same_age_boost > 0))
    throw DataError("synth: same_age_boost must be positive");
  if (!(generation_bump >= 0))
    throw DataError("synth: generation_bump must be >= 0");
  if (!(gender_mix_bias >= 0 && gender_mix_bias <= 1))
    throw DataError("synth: gender_mix_bias must lie in [0, 1]");
  if (!(label_fraction > 0 && label_fraction <= 1))
    throw DataError("synth: label_fraction must lie in (0, 1]");
  if (!(activity_scale >= 0))
    throw DataError("synth: activity_scale must be >= 0");
  if (window_months < 1)
    throw DataError("synth: window_months must be at least 1");
  if (!parse_timestamp(window_start))
    throw DataError("synth: window_start is not a valid timestamp");
  for (const auto& per_gender : activity)
    for (const ActivityRates& r : per_gender)
      for (int w = 0; w < 3; ++w)
        if (!(r.calls[w] >= 0) || !(r.sms[w] >= 0) || !(r.secs[w] >= 0))
          throw DataError("synth: activity rates must be >= 0");
}

std::string SynthConfig::canonical_text() const {
  std::string out;
  auto kv = [&out](std::string_view key, std::string_view value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  kv("seed", std::to_string(seed));
  kv("n_users", std::to_string(n_users));
  kv("gender_shares",
     format_double(gender_shares[0]) + ',' + format_double(gender_shares[1]));
  std::string pyr = format_double(pyramid_shares[0]);
  for (int i = 1; i < 4; ++i) pyr += ',' + format_double(pyramid_shares[i]);
  kv("pyramid_shares", pyr);
  kv("max_age", std::to_string(max_age));
  kv("mean_degree", format_double(mean_degree));
  kv("sigma_age", format_double(sigma_age));
  kv("same_age_boost", format_double(same_age_boost));
  kv("generation_bump", format_double(generation_bump));
  kv("gender_mix_bias", format_double(gender_mix_bias));
  kv("label_fraction", format_double(label_fraction));
  kv("activity_scale", format_double(activity_scale));
  kv("window_start", window_start);
  kv("window_months", std::to_string(window_months));
  for (int g = 0; g < 2; ++g)
    for (int grp = 0; grp < 4; ++grp)
      for (int kind = 0; kind < 3; ++kind) {
        const auto& r = activity[g][grp];
        const std::array<double, 3>& vals =
            kind == 0 ? r.calls : kind == 1 ? r.sms : r.secs;
        for (int w = 0; w < 3; ++w) {
          std::string key = "rate.";
          key += kGenderKey[g];
          key += '.';
          key += std::to_string(grp);
          key += '.';
          key += kKindKey[kind];
          key += '.';
          key += kWindowKey[w];
          kv(key, format_double(vals[w]));
        }
      }
  return out;
}

SynthConfig synth_config_from_kv(const KvPairs& kv) {
  SynthConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value));
    } else if (key == "n_users") {
      cfg.n_users = static_cast<std::uint32_t>(parse_int(value));
    } else if (key == "gender_shares") {
      const auto v = kv_doubles({{key, value}}, key, {});
      if (v.size() != 2) throw DataError("synth: gender_shares needs 2 values");
      cfg.gender_shares = {v[0], v[1]};
    } else if (key == "pyramid_shares") {
      const auto v = kv_doubles({{key, value}}, key, {});
      if (v.size() != 4)
        throw DataError("synth: pyramid_shares needs 4 values");
      std::copy(v.begin(), v.end(), cfg.pyramid_shares.begin());
    } else if (key == "max_age") {
      cfg.max_age = static_cast<int>(parse_int(value));
    } else if (key == "mean_degree") {
      cfg.mean_degree = parse_double(value);
    } else if (key == "sigma_age") {
      cfg.sigma_age = parse_double(value);
    } else if (key == "same_age_boost") {
      cfg.same_age_boost = parse_double(value);
    } else if (key == "generation_bump") {
      cfg.generation_bump = parse_double(value);
    } else if (key == "gender_mix_bias") {
      cfg.gender_mix_bias = parse_double(value);
    } else if (key == "label_fraction") {
      cfg.label_fraction = parse_double(value);
    } else if (key == "activity_scale") {
      cfg.activity_scale = parse_double(value);
    } else if (key == "window_start") {
      cfg.window_start = value;
    } else if (key == "window_months") {
      cfg.window_months = static_cast<int>(parse_int(value));
    } else if (key.starts_with("rate.")) {
      // rate.<m|f>.<group>.<calls|sms|secs>.<wd|wn|we>
      int g = -1, grp = -1, kind = -1, w = -1;
      std::string_view rest = std::string_view(key).substr(5);
      for (int i = 0; i < 2; ++i)
        if (rest.starts_with(std::string(kGenderKey[i]) + '.')) g = i;
      if (g >= 0) rest.remove_prefix(2);
      if (!rest.empty() && rest[0] >= '0' && rest[0] <= '3' &&
          rest.size() > 1 && rest[1] == '.') {
        grp = rest[0] - '0';
        rest.remove_prefix(2);
      }
      for (int i = 0; i < 3; ++i)
        if (rest.starts_with(std::string(kKindKey[i]) + '.'))
          kind = i, rest.remove_prefix(std::strlen(kKindKey[i]) + 1);
      for (int i = 0; i < 3; ++i)
        if (kind >= 0 && rest == kWindowKey[i]) w = i;
      if (g < 0 || grp < 0 || kind < 0 || w < 0)
        throw DataError("synth: malformed rate key '" + key + "'");
      ActivityRates& r = cfg.activity[g][grp];
      (kind == 0 ? r.calls : kind == 1 ? r.sms : r.secs)[w] =
          parse_double(value);
    } else {
      throw DataError("synth: unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string synth_user_name(NodeId u) { return "u" + std::to_string(u); }

SynthPopulation generate_population(const SynthConfig& cfg) {
  cfg.validate();
  const int n_ages = cfg.max_age - kAgeFloor + 1;
  // Per-age cumulative mass for inverse-CDF sampling.
  std::vector<double> cum(static_cast<std::size_t>(n_ages));
  double total = 0;
  for (int a = 0; a < n_ages; ++a) {
    const int age = kAgeFloor + a;
    const int grp = AgeGroups::group_of(age);
    const int lo = kGroupLo[grp];
    const int hi = grp == 3 ? cfg.max_age + 1 : kGroupLo[grp + 1];
    total += cfg.pyramid_shares[static_cast<std::size_t>(grp)] / (hi - lo);
    cum[static_cast<std::size_t>(a)] = total;
  }

  SynthPopulation pop;
  pop.labels.resize(cfg.n_users);
  pop.in_gt.resize(cfg.n_users);
  parallel_chunks(cfg.n_users, 4096, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t u = lo; u < hi; ++u) {
      Rng r(cfg.seed, kStreamPopulation | u);
      DemographicLabel& l = pop.labels[u];
      l.gender =
          r.uniform01() < cfg.gender_shares[0] ? Gender::male : Gender::female;
      const double x = r.uniform01() * total;
      const auto it = std::upper_bound(cum.begin(), cum.end(), x);
      const auto idx = std::min<std::size_t>(
          static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
      l.age = static_cast<std::uint8_t>(kAgeFloor + static_cast<int>(idx));
      pop.in_gt[u] = r.bernoulli(cfg.label_fraction) ? 1 : 0;
    }
  });
  return pop;
}

namespace {

double pair_affinity(const SynthConfig& cfg, const DemographicLabel& x,
                     const DemographicLabel& y) {
  const double delta = std::abs(static_cast<int>(x.age) - static_cast<int>(y.age));
  double k = std::exp(-delta / cfg.sigma_age);
  if (delta == 0) k *= cfg.same_age_boost;
  if (cfg.generation_bump > 0) {
    const double off = delta - 21.0;
    k += cfg.generation_bump * std::exp(-off * off / 8.0);
  }
  k *= x.gender == y.gender ? 1.0 + cfg.gender_mix_bias
                            : 1.0 - cfg.gender_mix_bias;
  return k;
}

}  // namespace

std::vector<SynthEdge> generate_edges(const SynthConfig& cfg,
                                      const SynthPopulation& pop) {
  cfg.validate();
  const std::size_t n = pop.labels.size();
  const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * cfg.mean_degree / 2.0));
  if (n < 2 || target == 0) return {};

  // Upper bound on pair_affinity, for rejection sampling.
  const double amax = (std::max(1.0, cfg.same_age_boost) +
                       cfg.generation_bump) *
                      (1.0 + cfg.gender_mix_bias);

  std::vector<std::uint64_t> keys(target);
  parallel_chunks(target, 8192, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t e = lo; e < hi; ++e) {
      Rng r(cfg.seed, kStreamEdges | e);
      const auto x = static_cast<NodeId>(r.uniform_int(n));
      NodeId y = x;
      // Acceptance averages a few percent in the tightest configurations,
      // so 512 tries leave a ~1e-6 fallback probability.
      for (int tries = 0; tries < 512; ++tries) {
        const auto cand = static_cast<NodeId>(r.uniform_int(n));
        if (cand == x) continue;
        y = cand;
        if (r.uniform01() * amax < pair_affinity(cfg, pop.labels[x],
                                                 pop.labels[y]))
          break;
      }
      const NodeId a = std::min(x, y), b = std::max(x, y);
      keys[e] = (static_cast<std::uint64_t>(a) << 32) | b;
    }
  });

  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<SynthEdge> edges(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    edges[i] = {static_cast<NodeId>(keys[i] >> 32),
                static_cast<NodeId>(keys[i] & 0xffffffffu)};
  return edges;
}

namespace {

struct EventDays {
  std::vector<std::int64_t> weekdays;
  std::vector<std::int64_t> weekend;
};

EventDays observation_days(const SynthConfig& cfg) {
  const std::int64_t start = *parse_timestamp(cfg.window_start);
  CivilDate d = civil_from_days(day_of(start));
  // Advance by window_months, clamping the day-of-month.
  const int total_months =
      (d.year * 12 + static_cast<int>(d.month) - 1) + cfg.window_months;
  const int ey = total_months / 12;
  const auto em = static_cast<unsigned>(total_months % 12) + 1;
  const unsigned ed = std::min(d.day, days_in_month(ey, em));
  const std::int64_t day0 = day_of(start);
  const std::int64_t day1 = days_from_civil(ey, em, ed);

  EventDays days;
  for (std::int64_t day = day0; day < day1; ++day)
    (weekday_from_days(day) < 5 ? days.weekdays : days.weekend).push_back(day);
  return days;
}

std::int64_t sample_time(Rng& r, int w, const EventDays& days) {
  std::int64_t day;
  int sec;
  if (w == static_cast<int>(TimeWindow::weekend)) {
    day = days.weekend[r.uniform_int(days.weekend.size())];
    sec = static_cast<int>(r.uniform_int(86400));
  } else {
    day = days.weekdays[r.uniform_int(days.weekdays.size())];
    const auto s = static_cast<int>(r.uniform_int(12 * 3600));
    // Daylight is 07:00-19:00; night wraps around it.
    sec = w == static_cast<int>(TimeWindow::week_daylight)
              ? 7 * 3600 + s
              : (s < 7 * 3600 ? s : s + 12 * 3600);
  }
  return day * 86400 + sec;
}

void append_timestamp(std::string& out, std::int64_t t) {
  char buf[20];
  const int len = format_timestamp_to(t, buf);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

void generate_cdr_events(const SynthConfig& cfg, const SynthPopulation& pop,
                         const std::vector<SynthEdge>& edges,
                         const TextSink& cdr_out, const TextSink& sms_out) {
  cfg.validate();
  const EventDays days = observation_days(cfg);
  if (edges.empty()) return;

  // Pre-rendered ids; the event loop only concatenates.
  std::vector<std::string> names(pop.labels.size());
  for (NodeId u = 0; u < names.size(); ++u) names[u] = synth_user_name(u);

  const std::size_t day_count[3] = {days.weekdays.size(),
                                    days.weekdays.size(),
                                    days.weekend.size()};

  auto run_chunk = [&](std::size_t lo, std::size_t hi, std::string& cdr,
                       std::string& sms) {
    for (std::size_t e = lo; e < hi; ++e) {
      Rng r(cfg.seed, kStreamEvents | e);
      const NodeId ends[2] = {edges[e].a, edges[e].b};
      for (int dir = 0; dir < 2; ++dir) {
        const NodeId caller = ends[dir], callee = ends[1 - dir];
        const DemographicLabel& l = pop.labels[caller];
        const ActivityRates& prof =
            cfg.activity[static_cast<int>(l.gender)][l.age_group()];
        const std::string& cname = names[caller];
        const std::string& dname = names[callee];
        for (int w = 0; w < 3; ++w) {
          if (day_count[w] == 0) continue;
          const double scale =
              cfg.activity_scale * static_cast<double>(day_count[w]);
          const std::uint64_t n_calls = r.poisson(prof.calls[w] * scale);
          for (std::uint64_t k = 0; k < n_calls; ++k) {
            const std::int64_t t = sample_time(r, w, days);
            const auto dur = static_cast<std::uint64_t>(
                std::llround(r.exponential(prof.secs[w])));
            cdr += cname;
            cdr += ',';
            cdr += dname;
            cdr += ',';
            append_timestamp(cdr, t);
            cdr += ',';
            cdr += std::to_string(dur);
            cdr += ",OUT,T";
            cdr += std::to_string(caller % 887);
            cdr += '\n';
          }
          const std::uint64_t n_sms = r.poisson(prof.sms[w] * scale);
          for (std::uint64_t k = 0; k < n_sms; ++k) {
            const std::int64_t t = sample_time(r, w, days);
            sms += cname;
            sms += ',';
            sms += dname;
            sms += ',';
            append_timestamp(sms, t);
            sms += ",OUT\n";
          }
        }
      }
    }
  };

  // Batched chunks: generate one batch in parallel, emit it in chunk order,
  // reuse the buffers. Keeps peak memory at a batch of text instead of the
  // whole stream.
  constexpr std::size_t kChunk = 2048, kBatch = 64;
  std::vector<std::pair<std::string, std::string>> bufs(kBatch);
  const std::size_t n_chunks = (edges.size() + kChunk - 1) / kChunk;
  for (std::size_t batch = 0; batch < n_chunks; batch += kBatch) {
    const std::size_t count = std::min(kBatch, n_chunks - batch);
    parallel_for(count, [&](std::size_t ci) {
      const std::size_t lo = (batch + ci) * kChunk;
      const std::size_t hi = std::min(lo + kChunk, edges.size());
      bufs[ci].first.clear();
      bufs[ci].second.clear();
      run_chunk(lo, hi, bufs[ci].first, bufs[ci].second);
    });
    for (std::size_t ci = 0; ci < count; ++ci) {
      if (!bufs[ci].first.empty()) cdr_out(bufs[ci].first);
      if (!bufs[ci].second.empty()) sms_out(bufs[ci].second);
    }
  }
}

SynthBuffers generate_buffers(const SynthConfig& cfg) {
  const SynthPopulation pop = generate_population(cfg);
  const std::vector<SynthEdge> edges = generate_edges(cfg, pop);

  SynthBuffers out;
  generate_cdr_events(
      cfg, pop, edges, [&](std::string_view s) { out.cdr += s; },
      [&](std::string_view s) { out.sms += s; });

  std::uint64_t labeled = 0;
  for (NodeId u = 0; u < cfg.n_users; ++u) {
    const std::string name = synth_user_name(u);
    out.clients += name;
    out.clients += '\n';
    if (!pop.in_gt[u]) continue;
    ++labeled;
    out.truth += name;
    out.truth += pop.labels[u].gender == Gender::male ? ",M," : ",F,";
    out.truth += std::to_string(pop.labels[u].age);
    out.truth += '\n';
  }

  const auto count_lines = [](const std::string& s) {
    return static_cast<std::uint64_t>(std::count(s.begin(), s.end(), '\n'));
  };
  out.manifest = "seed=" + std::to_string(cfg.seed) + '\n';
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.canonical_text())));
  out.manifest += std::string("config_hash=") + hash + '\n';
  out.manifest += "users=" + std::to_string(cfg.n_users) + '\n';
  out.manifest += "edges=" + std::to_string(edges.size()) + '\n';
  out.manifest += "calls=" + std::to_string(count_lines(out.cdr)) + '\n';
  out.manifest += "sms=" + std::to_string(count_lines(out.sms)) + '\n';
  out.manifest += "labeled=" + std::to_string(labeled) + '\n';
  return out;
}

void write_synth_dataset(const SynthConfig& cfg, const std::string& out_dir) {
  const SynthBuffers b = generate_buffers(cfg);
  write_text_file(out_dir + "/cdr.csv", b.cdr);
  write_text_file(out_dir + "/sms.csv", b.sms);
  write_text_file(out_dir + "/clients.csv", b.clients);
  write_text_file(out_dir + "/truth.csv", b.truth);
  write_text_file(out_dir + "/manifest.txt", b.manifest);
}

}  // namespace demograph
