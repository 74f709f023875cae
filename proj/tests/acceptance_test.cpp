// Whole-protocol acceptance checks. Each check prints one PASS/FAIL line
// with the measured quantity next to the bound it must satisfy; the process
// exits with the number of failed checks. Everything here runs on synthetic
// data with planted structure, so the checks are properties and qualitative
// trends, not dataset-specific numbers.

#include <sys/resource.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "demograph/classifiers.hpp"
#include "demograph/common.hpp"
#include "demograph/dataset.hpp"
#include "demograph/features.hpp"
#include "demograph/graph.hpp"
#include "demograph/io.hpp"
#include "demograph/matrix.hpp"
#include "demograph/pipeline.hpp"
#include "demograph/pps.hpp"
#include "demograph/preprocess.hpp"
#include "demograph/propagation.hpp"
#include "demograph/rng.hpp"
#include "demograph/special_functions.hpp"
#include "demograph/stats.hpp"
#include "demograph/synth.hpp"

namespace demograph {
namespace {

int g_check = 0;
int g_failures = 0;

void report(bool ok, const std::string& what) {
  ++g_check;
  std::printf("[%2d] %s  %s\n", g_check, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

Dataset synth_dataset(const SynthConfig& cfg) {
  const SynthBuffers buf = generate_buffers(cfg);
  return ingest_buffers(buf.cdr, buf.sms, buf.clients, buf.truth);
}

SynthConfig base_config(std::uint64_t seed, std::uint32_t users) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_users = users;
  return cfg;
}

// ---- propagation at scale: normalization and contraction ----

void check_normalization_and_contraction() {
  SynthConfig cfg = base_config(41, 100000);
  cfg.window_months = 1;
  cfg.activity_scale = 0.4;
  const Dataset ds = synth_dataset(cfg);

  std::vector<int> anchors(ds.num_users(), -1);
  for (NodeId n : ds.labeled) anchors[n] = ds.labels[n].age_group();

  LabelState state = init_state_pure(ds.graph, anchors, AgeGroups::kCount,
                                     0.5);
  const double t0 = now_seconds();
  double worst_row_sum = 0;
  std::vector<double> residuals;
  for (int step = 0; step < 30; ++step) {
    residuals.push_back(propagate_step(state, ds.graph));
    for (std::size_t r = 0; r < state.g.rows; ++r) {
      double sum = 0;
      for (std::size_t c = 0; c < state.g.cols; ++c) sum += state.g.at(r, c);
      worst_row_sum = std::max(worst_row_sum, std::abs(sum - 1.0));
    }
  }
  const double elapsed = now_seconds() - t0;

  char line[256];
  std::snprintf(line, sizeof line,
                "row sums stay normalized on a %zu-node graph: max |sum-1| = "
                "%.3g (<= 1e-9) in %.1fs for 30 steps (< 60s)",
                static_cast<std::size_t>(ds.num_users()), worst_row_sum,
                elapsed);
  report(worst_row_sum <= 1e-9 && elapsed < 60 && ds.num_users() >= 95000,
         line);

  bool contracts = true;
  for (std::size_t i = 1; i < residuals.size(); ++i)
    contracts = contracts &&
                residuals[i] <= 0.5 * residuals[i - 1] * (1 + 1e-12);
  std::snprintf(line, sizeof line,
                "residuals halve every step at lambda=0.5 and end at %.3g "
                "(< 1e-8) after 30 steps",
                residuals.back());
  report(contracts && residuals.back() < 1e-8, line);
}

// ---- hand-traced oracles ----

void check_hand_traces() {
  GraphBuilder gb;
  gb.add_call(0, 1, 60);
  gb.add_call(1, 2, 60);
  const SocialGraph graph = gb.build(3);

  LabelState s = init_state_pure(graph, {0, -1, -1}, 2, 0.5);
  double worst = 0;
  propagate_step(s, graph);
  const double step1[3][2] = {{0.75, 0.25}, {0.625, 0.375}, {0.5, 0.5}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      worst = std::max(worst, std::abs(s.g.at(r, c) - step1[r][c]));
  propagate_step(s, graph);
  const double step2[3][2] = {{0.8125, 0.1875},
                              {0.5625, 0.4375},
                              {0.5625, 0.4375}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      worst = std::max(worst, std::abs(s.g.at(r, c) - step2[r][c]));

  char line[256];
  std::snprintf(line, sizeof line,
                "three-node path diffusion matches the hand trace: max "
                "deviation %.3g (<= 1e-12)",
                worst);
  report(worst <= 1e-12, line);

  RowMatrix proba(2, 2);
  proba.at(0, 0) = 0.9;
  proba.at(0, 1) = 0.1;
  proba.at(1, 0) = 0.6;
  proba.at(1, 1) = 0.4;
  QuotaPlan plan;
  plan.q = 1;
  plan.total = 2;
  plan.quota = {1, 1};
  plan.target_shares = {0.5, 0.5};
  const PpsAssignment asg = pps_assign(proba, plan);
  const bool ok = asg.category == std::vector<int>{0, 1} &&
                  asg.order == std::vector<std::uint32_t>{0, 1};
  report(ok, "two-row quota collapse matches the hand trace: confident row "
             "takes its category, the other takes the remaining one");
}

// ---- quota exactness and greedy dominance ----

// Every feasible assignment's confidence sequence, compared lexicographically
// under the greedy's own tuple order (probability desc, row asc, cat asc).
struct Tuple {
  double p;
  std::uint32_t row;
  int cat;

  bool operator<(const Tuple& o) const {
    if (p != o.p) return p > o.p;
    if (row != o.row) return row < o.row;
    return cat < o.cat;
  }
  bool operator==(const Tuple& o) const {
    return p == o.p && row == o.row && cat == o.cat;
  }
};

std::vector<Tuple> selection_sequence(const RowMatrix& proba,
                                      const std::vector<int>& category) {
  std::vector<Tuple> seq;
  for (std::size_t r = 0; r < category.size(); ++r)
    if (category[r] >= 0)
      seq.push_back({proba.at(r, static_cast<std::size_t>(category[r])),
                     static_cast<std::uint32_t>(r), category[r]});
  std::sort(seq.begin(), seq.end());
  return seq;
}

// True when a is lexicographically at least b under Tuple's order.
bool dominates(const std::vector<Tuple>& a, const std::vector<Tuple>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return a[i] < b[i];
  }
  return true;
}

void enumerate_selections(const RowMatrix& proba, std::uint32_t row,
                          std::vector<std::uint64_t>& left,
                          std::uint64_t remaining, std::vector<int>& cats,
                          const std::function<void()>& done) {
  if (remaining == 0) {
    done();
    return;
  }
  if (row == proba.rows || proba.rows - row < remaining) return;
  enumerate_selections(proba, row + 1, left, remaining, cats, done);
  for (std::size_t c = 0; c < left.size(); ++c) {
    if (left[c] == 0) continue;
    --left[c];
    cats[row] = static_cast<int>(c);
    enumerate_selections(proba, row + 1, left, remaining - 1, cats, done);
    cats[row] = -1;
    ++left[c];
  }
}

void check_quota_exactness_and_dominance() {
  Rng rng(271828, 0xacceb7);
  bool counts_exact = true;
  for (int trial = 0; trial < 100 && counts_exact; ++trial) {
    const std::size_t rows = 3 + rng.uniform_int(38);
    const std::size_t cols = 2 + rng.uniform_int(3);
    RowMatrix proba(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        proba.at(r, c) = 0.05 + rng.uniform01();
        sum += proba.at(r, c);
      }
      for (std::size_t c = 0; c < cols; ++c) proba.at(r, c) /= sum;
    }
    std::vector<double> shares(cols, 0.0);
    double share_sum = 0;
    for (double& s : shares) share_sum += (s = 0.1 + rng.uniform01());
    for (double& s : shares) s /= share_sum;
    const double q = 0.05 + 0.95 * rng.uniform01();

    const QuotaPlan plan = compute_quotas(rows, q, shares);
    const PpsAssignment asg = pps_assign(proba, plan);
    std::vector<std::uint64_t> used(cols, 0);
    for (int c : asg.category)
      if (c >= 0) ++used[static_cast<std::size_t>(c)];
    counts_exact = counts_exact && used == plan.quota;
  }
  report(counts_exact, "per-category assigned counts equal the quotas "
                       "exactly on 100 random instances");

  bool greedy_dominates = true;
  for (int trial = 0; trial < 40 && greedy_dominates; ++trial) {
    const std::size_t rows = 3 + rng.uniform_int(6);  // up to 8 rows
    const std::size_t cols = 2 + rng.uniform_int(2);
    RowMatrix proba(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        // Coarse grid so ties actually occur.
        proba.at(r, c) = 0.05 * static_cast<double>(1 + rng.uniform_int(19));
        sum += proba.at(r, c);
      }
      for (std::size_t c = 0; c < cols; ++c) proba.at(r, c) /= sum;
    }
    std::vector<double> shares(cols, 1.0 / static_cast<double>(cols));
    const double q = 0.2 + 0.8 * rng.uniform01();
    const QuotaPlan plan = compute_quotas(rows, q, shares);
    const PpsAssignment asg = pps_assign(proba, plan);
    const std::vector<Tuple> greedy = selection_sequence(proba, asg.category);

    std::vector<std::uint64_t> left = plan.quota;
    std::vector<int> cats(rows, -1);
    enumerate_selections(
        proba, 0, left, plan.total, cats, [&] {
          greedy_dominates =
              greedy_dominates &&
              dominates(greedy, selection_sequence(proba, cats));
        });
  }
  report(greedy_dominates,
         "greedy collapse matches the exhaustive confidence-dominant "
         "selection on every instance with <= 8 rows");
}

// ---- qualitative trends over a seeded benchmark batch ----

struct BatchResult {
  std::vector<double> age_ml_q1;
  std::vector<double> age_rdif_q1;
  std::vector<double> age_rdif_q8;
  // Gender accuracy at q = 1, 1/2, 1/4, 1/8.
  std::vector<std::array<double, 4>> gender_ml;
};

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

BatchResult run_benchmark_batch(int n_seeds) {
  BatchResult out;
  for (int i = 0; i < n_seeds; ++i) {
    SynthConfig cfg = base_config(100 + static_cast<std::uint64_t>(i), 50000);
    cfg.sigma_age = 5;
    cfg.mean_degree = 10;
    cfg.label_fraction = 0.3;
    cfg.activity_scale = 0.3;
    const Dataset ds = synth_dataset(cfg);

    PipelineParams p;
    p.task = Task::age;
    p.method = Method::rdif;
    p.qs = {1, 0.125};
    p.seed = cfg.seed;
    const EvalReport rdif = run_pipeline(ds, p);
    out.age_rdif_q1.push_back(rdif.rows[0].accuracy);
    out.age_rdif_q8.push_back(rdif.rows[1].accuracy);

    p.method = Method::ml;
    p.qs = {1};
    const EvalReport ml = run_pipeline(ds, p);
    out.age_ml_q1.push_back(ml.rows[0].accuracy);

    PipelineParams pg;
    pg.task = Task::gender;
    pg.method = Method::ml;
    pg.qs = {1, 0.5, 0.25, 0.125};
    pg.seed = cfg.seed;
    const EvalReport gml = run_pipeline(ds, pg);
    out.gender_ml.push_back({gml.rows[0].accuracy, gml.rows[1].accuracy,
                             gml.rows[2].accuracy, gml.rows[3].accuracy});
  }
  return out;
}

void check_method_ordering(const BatchResult& batch) {
  const double ml = mean(batch.age_ml_q1);
  const double rdif = mean(batch.age_rdif_q1);
  const double rdif_q8 = mean(batch.age_rdif_q8);

  // Paired one-sided test that the q = 1/8 slice beats full coverage.
  const std::size_t n = batch.age_rdif_q1.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i)
    diff[i] = batch.age_rdif_q8[i] - batch.age_rdif_q1[i];
  const double d_mean = mean(diff);
  double ss = 0;
  for (double d : diff) ss += (d - d_mean) * (d - d_mean);
  const double d_sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double t = d_mean / (d_sd / std::sqrt(static_cast<double>(n)));
  const double p = student_t_upper_p(t, static_cast<double>(n - 1));

  char line[256];
  std::snprintf(line, sizeof line,
                "age accuracy over %zu seeds orders diffusion %.3f > "
                "classifier %.3f >= random 0.25 at full coverage",
                n, rdif, ml);
  report(rdif > ml && ml >= 0.25, line);

  std::snprintf(line, sizeof line,
                "diffusion at 1/8 coverage (%.3f) beats full coverage "
                "(%.3f), paired one-sided p = %.2g (< 0.01)",
                rdif_q8, rdif, p);
  report(rdif_q8 > rdif && p < 0.01, line);
}

void check_gender_coverage_monotonicity(const BatchResult& batch) {
  std::array<double, 4> acc{};
  for (const auto& a : batch.gender_ml)
    for (std::size_t j = 0; j < 4; ++j) acc[j] += a[j];
  for (double& a : acc) a /= static_cast<double>(batch.gender_ml.size());

  const bool monotone =
      acc[1] >= acc[0] && acc[2] >= acc[1] && acc[3] >= acc[2];
  char line[256];
  std::snprintf(line, sizeof line,
                "gender accuracy rises as coverage falls: %.3f <= %.3f <= "
                "%.3f <= %.3f over q = 1, 1/2, 1/4, 1/8",
                acc[0], acc[1], acc[2], acc[3]);
  report(monotone, line);
}

// ---- smooth-loss gradients against finite differences ----

double fd_gradient_worst_error(bool multinomial) {
  Rng rng(99, multinomial ? 0xfd02u : 0xfd01u);
  const std::size_t rows = 24, cols = 5;
  const int n_classes = 3;
  double worst = 0;
  for (int point = 0; point < 10; ++point) {
    RowMatrix x(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        x.at(r, c) = rng.normal() * 1.5;
    std::vector<int> y(rows);
    for (std::size_t r = 0; r < rows; ++r)
      y[r] = multinomial ? static_cast<int>(rng.uniform_int(n_classes))
                         : (rng.bernoulli(0.5) ? 1 : -1);
    const std::size_t n_params =
        multinomial ? static_cast<std::size_t>(n_classes) * (cols + 1)
                    : cols + 1;
    std::vector<double> params(n_params);
    for (double& v : params) v = rng.normal() * 0.5;

    std::vector<double> grad(n_params);
    const auto loss = [&](const std::vector<double>& theta,
                          std::vector<double>* g) {
      return multinomial
                 ? multinomial_smooth_loss(x, y, n_classes, theta, 1.3, g)
                 : logistic_smooth_loss(x, y, theta, 1.3, g);
    };
    loss(params, &grad);
    for (std::size_t j = 0; j < n_params; ++j) {
      const double eps = 1e-6 * std::max(1.0, std::abs(params[j]));
      std::vector<double> theta = params;
      theta[j] = params[j] + eps;
      const double up = loss(theta, nullptr);
      theta[j] = params[j] - eps;
      const double down = loss(theta, nullptr);
      const double fd = (up - down) / (2 * eps);
      worst = std::max(worst,
                       std::abs(grad[j] - fd) / std::max(1.0, std::abs(fd)));
    }
  }
  return worst;
}

void check_gradients() {
  const double worst_binary = fd_gradient_worst_error(false);
  const double worst_multi = fd_gradient_worst_error(true);
  char line[256];
  std::snprintf(line, sizeof line,
                "smooth-loss gradients match central differences at 10 "
                "random points each: worst relative error %.3g binary, "
                "%.3g multiclass (< 1e-4)",
                worst_binary, worst_multi);
  report(worst_binary < 1e-4 && worst_multi < 1e-4, line);
}

// ---- preprocessing anchors ----

void check_preprocessing_anchor() {
  const double anchor = log_transform(3838);
  const bool anchor_ok = std::round(anchor * 100) / 100 == 3.58;

  Rng rng(7, 0x5a5a);
  bool summaries_ok = true;
  for (int trial = 0; trial < 1000 && summaries_ok; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(200);
    std::vector<double> column(n);
    for (double& v : column) {
      v = std::floor(rng.exponential(40) * 4) / 4;  // coarse, with ties
    }
    const ColumnSummary got = summarize_column(column);

    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double p) {
      const double pos = p * static_cast<double>(n - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, n - 1);
      const double frac = pos - static_cast<double>(lo);
      return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };
    const double tol = 1e-12;
    const auto close = [&](double a, double b) {
      return std::abs(a - b) <= tol * std::max({1.0, std::abs(a),
                                                std::abs(b)});
    };
    summaries_ok = summaries_ok && close(got.min, sorted.front()) &&
                   close(got.max, sorted.back()) &&
                   close(got.q1, quantile(0.25)) &&
                   close(got.median, quantile(0.5)) &&
                   close(got.q3, quantile(0.75));
  }

  char line[256];
  std::snprintf(line, sizeof line,
                "log transform of 3838 rounds to 3.58 (got %.6f) and column "
                "summaries match a full-sort quantile oracle on 1000 random "
                "columns",
                anchor);
  report(anchor_ok && summaries_ok, line);
}

// ---- all-pairs mean test calibration ----

void check_tukey_calibration() {
  Rng rng(2025, 0x70cb);
  const std::size_t n_per_group = 25;
  int family_errors = 0;
  const int n_sims = 1000;
  for (int sim = 0; sim < n_sims; ++sim) {
    std::vector<std::vector<double>> groups(4);
    for (auto& g : groups) {
      g.resize(n_per_group);
      for (double& v : g) v = rng.normal();
    }
    bool any = false;
    for (const TukeyHsdRow& row : tukey_hsd(groups)) any = any || row.reject;
    family_errors += any ? 1 : 0;
  }
  const double fwer =
      static_cast<double>(family_errors) / static_cast<double>(n_sims);

  // Planted separation of 12 sigma / sqrt(n) between adjacent group means,
  // comfortably past the detection threshold; every pair must reject.
  const double step = 12.0 / std::sqrt(static_cast<double>(n_per_group));
  bool all_reject = true;
  for (int sim = 0; sim < 50 && all_reject; ++sim) {
    std::vector<std::vector<double>> groups(4);
    for (std::size_t gi = 0; gi < 4; ++gi) {
      groups[gi].resize(n_per_group);
      for (double& v : groups[gi])
        v = rng.normal() + step * static_cast<double>(gi);
    }
    for (const TukeyHsdRow& row : tukey_hsd(groups))
      all_reject = all_reject && row.reject;
  }

  char line[256];
  std::snprintf(line, sizeof line,
                "all-pairs test holds its familywise error under the null: "
                "%.3f in [0.03, 0.07] over 1000 simulations; planted "
                "separations reject all 6 pairs",
                fwer);
  report(fwer >= 0.03 && fwer <= 0.07 && all_reject, line);
}

// ---- planted age homophily survives the round trip ----

void check_homophily_round_trip() {
  SynthConfig cfg = base_config(77, 20000);
  cfg.sigma_age = 3;
  cfg.label_fraction = 0.5;
  cfg.window_months = 1;
  cfg.activity_scale = 0.5;
  const Dataset ds = synth_dataset(cfg);

  const AgeLinkMatrix m = age_link_matrix(ds.graph, ds.has_label, ds.labels);
  const int side = m.max_age - m.min_age + 1;
  double band_sum = 0, off_sum = 0;
  std::size_t band_n = 0, off_n = 0;
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) {
      const double v = static_cast<double>(
          m.counts[static_cast<std::size_t>(a * side + b)]);
      if (std::abs(a - b) <= 3) {
        band_sum += v;
        ++band_n;
      } else {
        off_sum += v;
        ++off_n;
      }
    }
  const double band_mean = band_sum / static_cast<double>(band_n);
  const double off_mean = off_sum / static_cast<double>(off_n);

  const std::vector<std::uint64_t> hist =
      age_diff_histogram(ds.graph, ds.has_label, ds.labels);
  const bool mode_at_zero =
      !hist.empty() &&
      *std::max_element(hist.begin(), hist.end()) == hist[0];

  char line[256];
  std::snprintf(line, sizeof line,
                "planted age homophily survives the round trip: link-matrix "
                "band mean %.2f >= 2x off-band mean %.2f; age-difference "
                "histogram peaks at zero",
                band_mean, off_mean);
  report(band_mean >= 2 * off_mean && mode_at_zero, line);
}

// ---- determinism ----

void check_determinism() {
  SynthConfig cfg = base_config(5, 5000);
  cfg.window_months = 1;
  cfg.label_fraction = 0.4;
  const Dataset ds = synth_dataset(cfg);

  PipelineParams p;
  p.task = Task::gender;
  p.method = Method::ml_rdif;
  p.qs = {1, 0.5, 0.25, 0.125};
  p.seed = 9;
  p.top_k = 30;
  p.C = 1;

  const auto run_once = [&] {
    std::vector<std::pair<std::string, std::string>> artifacts;
    ArtifactSink sink = [&artifacts](const std::string& name,
                                     const std::string& content) {
      artifacts.emplace_back(name, content);
    };
    const EvalReport r = run_pipeline(ds, p, &sink, "");
    artifacts.emplace_back("__report", report_csv(r));
    return artifacts;
  };
  const auto first = run_once();
  const auto second = run_once();
  report(first == second,
         "two full pipeline runs with the same config and seed produce "
         "byte-identical reports and artifacts");
}

// ---- scale smoke test ----

void check_scale() {
  const double t0 = now_seconds();
  SynthConfig cfg = base_config(12, 1000000);
  cfg.activity_scale = 0.1;
  cfg.label_fraction = 0.3;

  std::uint64_t events = 0;
  Dataset ds = [&] {
    const SynthBuffers buf = generate_buffers(cfg);
    for (const auto& [key, value] : parse_kv_text(buf.manifest))
      if (key == "calls" || key == "sms")
        events += static_cast<std::uint64_t>(parse_int(value));
    return ingest_buffers(buf.cdr, buf.sms, buf.clients, buf.truth);
  }();

  const RowMatrix feats = extract_features(ds);
  const bool features_ok =
      feats.rows == ds.clients.size() && feats.cols == kNumFeatures;

  PipelineParams p;
  p.task = Task::age;
  p.method = Method::rdif;
  p.qs = {1, 0.125};
  p.seed = 12;
  const EvalReport report_out = run_pipeline(ds, p);
  const double elapsed = now_seconds() - t0;

  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb =
      static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);

  char line[300];
  std::snprintf(line, sizeof line,
                "%zu users / %llu events run end to end in %.0fs (< 600s) "
                "with %.2f GB peak memory (< 8 GB)",
                static_cast<std::size_t>(ds.num_users()),
                static_cast<unsigned long long>(events), elapsed, peak_gb);
  report(ds.num_users() >= 950000 && events >= 5000000 && elapsed < 600 &&
             peak_gb < 8.0 && features_ok && report_out.rows.size() == 2,
         line);
}

}  // namespace
}  // namespace demograph

int main() {
  using namespace demograph;
  check_normalization_and_contraction();
  check_hand_traces();
  check_quota_exactness_and_dominance();

  const BatchResult batch = run_benchmark_batch(20);
  check_method_ordering(batch);
  check_gender_coverage_monotonicity(batch);

  check_gradients();
  check_preprocessing_anchor();
  check_tukey_calibration();
  check_homophily_round_trip();
  check_determinism();
  check_scale();

  std::printf("%d of %d checks passed\n", g_check - g_failures, g_check);
  return g_failures;
}
