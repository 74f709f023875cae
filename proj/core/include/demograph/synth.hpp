#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "demograph/interner.hpp"
#include "demograph/io.hpp"
#include "demograph/records.hpp"

namespace demograph {

// Expected events per day, per edge direction, for one (gender, age-group)
// cell, indexed by TimeWindow (weekday daylight, weekday night, weekend).
// secs is the mean call duration in seconds.
struct ActivityRates {
  std::array<double, 3> calls{};
  std::array<double, 3> sms{};
  std::array<double, 3> secs{};
};

// Generator parameters. The random-stream discipline: every user, candidate
// edge and edge event block draws from its own counter-based substream keyed
// by (seed, entity kind, entity index), so outputs are bit-identical for any
// thread count and any evaluation order.
struct SynthConfig {
  std::uint64_t seed = 1;
  std::uint32_t n_users = 10000;
  std::array<double, 2> gender_shares{0.5683, 0.4317};  // male, female

  // Age pyramid: mass per age group, spread uniformly over the integer ages
  // inside the group; the oldest group spans [50, max_age].
  std::array<double, 4> pyramid_shares{0.18, 0.32, 0.32, 0.18};
  int max_age = 79;

  double mean_degree = 10;

  // Partner affinity: exp(-|age_x - age_y| / sigma_age), multiplied by
  // same_age_boost when the ages are equal (a pure exponential kernel puts
  // the modal age difference of the edge histogram at 1, not 0, because
  // off-diagonal age pairs are twice as numerous; the boost restores the
  // observed delta = 0 mode; set it to 1 for the bare kernel), plus an
  // optional additive mode of weight generation_bump centered at delta = 21,
  // all times (1 + gender_mix_bias) for same-gender pairs and
  // (1 - gender_mix_bias) for cross-gender pairs.
  double sigma_age = 5;
  double same_age_boost = 2.5;
  double generation_bump = 0;
  double gender_mix_bias = 0.12;

  double label_fraction = 0.3;  // users carrying ground truth
  double activity_scale = 1;    // global multiplier on all event rates

  // Events live on whole days in [day(window_start), day(window_start) +
  // window_months); timestamps are uniform within each day's time window.
  std::string window_start = "2021-03-01T00:00:00";
  int window_months = 3;

  ActivityRates activity[2][4];  // [gender][age group]

  SynthConfig();  // fills the default activity table

  void validate() const;  // throws DataError on violated invariants

  // Canonical key=value dump of every field; parseable by
  // synth_config_from_kv and the input for the manifest's config hash.
  std::string canonical_text() const;
};

// Builds a config from parsed key=value pairs (defaults for missing keys;
// unknown keys are an error). Keys match canonical_text():
//   seed, n_users, gender_shares, pyramid_shares, max_age, mean_degree,
//   sigma_age, same_age_boost, generation_bump, gender_mix_bias,
//   label_fraction, activity_scale, window_start, window_months, and the
//   rate table as rate.{m,f}.{0..3}.{calls,sms,secs}.{wd,wn,we}.
SynthConfig synth_config_from_kv(const KvPairs& kv);

// "u" + decimal index; the ids used in every emitted file.
std::string synth_user_name(NodeId u);

struct SynthPopulation {
  std::vector<DemographicLabel> labels;  // one per user
  std::vector<std::uint8_t> in_gt;       // carries a ground-truth row
};

SynthPopulation generate_population(const SynthConfig& cfg);

struct SynthEdge {
  NodeId a, b;  // a < b
};

// Samples round(n_users * mean_degree / 2) undirected pairs (one uniform
// endpoint, the other by rejection sampling against the affinity kernel)
// and deduplicates, so the realized mean degree tracks the target from
// below by the collision rate.
std::vector<SynthEdge> generate_edges(const SynthConfig& cfg,
                                      const SynthPopulation& pop);

using TextSink = std::function<void(std::string_view)>;

// Streams call and SMS CSV text in the exact shape ingestion consumes.
// Per edge and direction, each window's event count is Poisson with mean
// rate * scale * days-of-that-window, timestamps uniform in the window,
// durations exponential. Chunked emission in fixed chunk order.
void generate_cdr_events(const SynthConfig& cfg, const SynthPopulation& pop,
                         const std::vector<SynthEdge>& edges,
                         const TextSink& cdr_out, const TextSink& sms_out);

struct SynthBuffers {
  std::string cdr;       // caller,callee,timestamp,duration,direction,tower
  std::string sms;       // sender,receiver,timestamp,direction
  std::string clients;   // every generated user (N_O = N_T by construction)
  std::string truth;     // user_id,gender,age for the label_fraction sample
  std::string manifest;  // seed, config hash, deterministic output counts
};

SynthBuffers generate_buffers(const SynthConfig& cfg);

// generate_buffers written to cdr.csv, sms.csv, clients.csv, truth.csv and
// manifest.txt under out_dir (which must already exist).
void write_synth_dataset(const SynthConfig& cfg, const std::string& out_dir);

}  // namespace demograph
