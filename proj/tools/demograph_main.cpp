// Command-line front end. Subcommands mirror the pipeline stages; every
// stage reads the raw CSV inputs (ids are interned in stream order, so node
// ids agree across stage invocations) plus the artifacts earlier stages left
// in the --out directory.
//
// Configuration comes from --config (key = value file) or, for the data
// commands, from standard input when it is a pipe; explicit flags win over
// both. `synth` prints its output paths in the same key = value form, so
//
//   demograph synth --seed 7 --out syn | demograph run --task age
//
// runs the whole protocol on a fresh synthetic dataset.
//
// Exit codes: 0 success, 1 usage, 2 bad data, 3 numeric failure.

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "demograph/civil.hpp"
#include "demograph/classifiers.hpp"
#include "demograph/common.hpp"
#include "demograph/dataset.hpp"
#include "demograph/features.hpp"
#include "demograph/io.hpp"
#include "demograph/pipeline.hpp"
#include "demograph/pps.hpp"
#include "demograph/preprocess.hpp"
#include "demograph/propagation.hpp"
#include "demograph/stats.hpp"
#include "demograph/synth.hpp"

namespace {

using namespace demograph;

// Command misuse that CLI11's own validation cannot catch (e.g. a method
// flag that is valid syntax but wrong for the subcommand).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct Opts {
  std::string cdr, sms, clients, truth;
  std::string out;     // artifact directory; empty = per-command default
  std::string config;  // key = value file
  std::string task = "age";
  std::string method = "rdif";
  std::vector<std::string> q_args;  // repeatable --q, comma lists allowed
  double lambda = 0.5;
  int iters = 30;
  std::uint64_t seed = 1;
  double train_fraction = 0.7;
  double C = 10;
  int top_k = 100;
  bool grid = false;
  bool matrix = false;  // preprocess: also dump the rescaled model matrix
  // synth overrides
  std::uint64_t users = 10000;
  int months = 3;
  double scale = 1;
  double label_fraction = 0.3;
};

// ---- configuration plumbing ----

const std::set<std::string, std::less<>>& known_config_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "cdr",         "sms",        "clients",       "truth",
      "out",         "task",       "method",        "q",
      "lambda",      "iters",      "seed",          "train_fraction",
      "early_stop",  "C",          "k",             "grid",
      "max_epochs",  "tol",        "min_age",       "max_age",
      "window_begin", "window_end",
      "config_hash",  // informational, carried by synth manifests
  };
  return keys;
}

KvPairs load_pipeline_kv(const Opts& o) {
  KvPairs kv;
  if (!o.config.empty()) {
    kv = parse_kv_file(o.config);
  } else if (isatty(STDIN_FILENO) == 0) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    kv = parse_kv_text(ss.str());
  }
  for (const auto& [key, value] : kv)
    if (!known_config_keys().count(key))
      throw DataError("unknown configuration key '" + key + "'");
  return kv;
}

// Flag-over-config resolution: a value counts as explicitly set only when
// the flag exists on this subcommand and appeared on the command line.
struct Resolve {
  CLI::App* cmd;
  const KvPairs* kv;

  bool given(const char* flag) const {
    const CLI::Option* o = cmd->get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  }
  void str(const char* flag, const char* key, std::string& v) const {
    if (!given(flag)) v = kv_string(*kv, key, v);
  }
  void real(const char* flag, const char* key, double& v) const {
    if (!given(flag)) v = kv_double(*kv, key, v);
  }
  void integer(const char* flag, const char* key, int& v) const {
    if (!given(flag)) v = static_cast<int>(kv_int(*kv, key, v));
  }
  void u64(const char* flag, const char* key, std::uint64_t& v) const {
    if (!given(flag))
      v = static_cast<std::uint64_t>(
          kv_int(*kv, key, static_cast<std::int64_t>(v)));
  }
  void flag(const char* flag_name, const char* key, bool& v) const {
    if (!given(flag_name)) v = kv_int(*kv, key, v ? 1 : 0) != 0;
  }
};

Task parse_task(const std::string& s) {
  if (s == "gender") return Task::gender;
  if (s == "age") return Task::age;
  throw DataError("task must be 'gender' or 'age', got '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "ml") return Method::ml;
  if (s == "rdif") return Method::rdif;
  if (s == "ml+rdif") return Method::ml_rdif;
  throw DataError("method must be 'ml', 'rdif' or 'ml+rdif', got '" + s + "'");
}

std::vector<double> parse_q_list(const std::vector<std::string>& args) {
  std::vector<double> qs;
  for (const std::string& arg : args) {
    std::string_view rest = arg;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      qs.push_back(parse_double(rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
    }
  }
  if (qs.empty()) throw DataError("empty q list");
  return qs;
}

IngestOptions make_ingest_options(CLI::App* cmd, Opts& o, const KvPairs& kv) {
  const Resolve r{cmd, &kv};
  r.str("--cdr", "cdr", o.cdr);
  r.str("--sms", "sms", o.sms);
  r.str("--clients", "clients", o.clients);
  r.str("--truth", "truth", o.truth);
  if (o.cdr.empty() && o.sms.empty())
    throw DataError(
        "no input logs given (use --cdr/--sms, --config, or pipe a synth "
        "manifest)");

  IngestOptions io;
  io.cdr_path = o.cdr;
  io.sms_path = o.sms;
  io.clients_path = o.clients;
  io.truth_path = o.truth;
  io.min_age = static_cast<int>(kv_int(kv, "min_age", io.min_age));
  io.max_age = static_cast<int>(kv_int(kv, "max_age", io.max_age));
  for (const auto& [key, member] :
       {std::pair{"window_begin", &io.window_begin},
        std::pair{"window_end", &io.window_end}}) {
    if (const std::string* s = kv_find(kv, key)) {
      const auto t = parse_timestamp(*s);
      if (!t) throw DataError(std::string(key) + " is not a valid timestamp: '" + *s + "'");
      *member = *t;
    }
  }
  return io;
}

PipelineParams make_params(CLI::App* cmd, Opts& o, const KvPairs& kv) {
  const Resolve r{cmd, &kv};
  r.str("--task", "task", o.task);
  r.str("--method", "method", o.method);
  r.real("--lambda", "lambda", o.lambda);
  r.integer("--iters", "iters", o.iters);
  r.u64("--seed", "seed", o.seed);
  r.real("--train-fraction", "train_fraction", o.train_fraction);
  r.real("--C", "C", o.C);
  r.integer("--k", "k", o.top_k);
  r.flag("--grid", "grid", o.grid);

  PipelineParams p;
  p.task = parse_task(o.task);
  p.method = parse_method(o.method);
  p.lambda = o.lambda;
  p.iters = o.iters;
  p.seed = o.seed;
  p.train_fraction = o.train_fraction;
  p.C = o.C;
  p.top_k = o.top_k;
  p.grid = o.grid;
  p.early_stop = kv_double(kv, "early_stop", p.early_stop);
  p.train.max_epochs =
      static_cast<int>(kv_int(kv, "max_epochs", p.train.max_epochs));
  p.train.tol = kv_double(kv, "tol", p.train.tol);
  if (r.given("--q"))
    p.qs = parse_q_list(o.q_args);
  else
    p.qs = kv_doubles(kv, "q", p.qs);
  return p;
}

// ---- artifact plumbing ----

std::string out_dir(const Opts& o, const char* fallback) {
  return o.out.empty() ? std::string(fallback) : o.out;
}

std::string emit_file(const std::string& dir, const std::string& name,
                      const std::string& stamp, const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  write_text_file(path, stamp + content);
  return path;
}

std::string require_artifact(const std::string& dir, const std::string& name,
                             const char* stage) {
  const std::string path = dir + "/" + name;
  if (!std::filesystem::exists(path))
    throw DataError("missing artifact '" + path + "'; run the " +
                    std::string(stage) + " stage into this --out directory "
                    "first");
  return read_text_file(path);
}

std::string stamp_line(const std::string& detail, const KvPairs& kv) {
  std::string s = "# " + detail;
  if (const std::string* h = kv_find(kv, "config_hash"))
    s += " config_hash=" + *h;
  s += '\n';
  return s;
}

std::string params_detail(const char* cmd_name, const PipelineParams& p) {
  std::string s = "demograph ";
  s += cmd_name;
  s += " task=";
  s += task_name(p.task);
  s += " method=";
  s += method_name(p.method);
  s += " seed=" + std::to_string(p.seed);
  return s;
}

// Client-row probabilities recomputed from the saved model and its training
// scaling, for the stages that run after a standalone `train`.
RowMatrix client_proba_from_artifacts(const Dataset& ds,
                                      const std::string& dir) {
  const LinearModel model =
      model_from_text(require_artifact(dir, "model.txt", "train"));
  const ScalingParams scale =
      scaling_params_from_csv(require_artifact(dir, "scaling.csv", "train"));
  RowMatrix m = widen_with_logs(extract_features(ds));
  if (scale.min.size() != m.cols)
    throw DataError("saved scaling covers " +
                    std::to_string(scale.min.size()) + " columns, expected " +
                    std::to_string(m.cols));
  apply_minmax(m, scale);
  return predict_proba(model, m);
}

// Rows of `all` (one per client) for the given nodes.
RowMatrix rows_for_nodes_from_clients(const RowMatrix& all, const Dataset& ds,
                                      const std::vector<NodeId>& nodes) {
  std::vector<std::uint32_t> row_of(ds.num_users(), kNoNode);
  for (std::size_t i = 0; i < ds.clients.size(); ++i)
    row_of[ds.clients[i]] = static_cast<std::uint32_t>(i);
  RowMatrix out(nodes.size(), all.cols);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    std::copy_n(all.row(row_of[nodes[i]]), all.cols, out.row(i));
  return out;
}

// Rows of a per-node matrix (the propagation state) for the given nodes.
RowMatrix rows_for_nodes_from_state(const RowMatrix& g,
                                    const std::vector<NodeId>& nodes) {
  RowMatrix out(nodes.size(), g.cols);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    std::copy_n(g.row(nodes[i]), g.cols, out.row(i));
  return out;
}

std::string matrix_csv(const Interner& users, const std::vector<NodeId>& rows,
                       const RowMatrix& m,
                       const std::vector<std::string>& names) {
  std::string out = "user_id";
  for (const std::string& name : names) out += ',' + name;
  out += '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += users.name(rows[i]);
    for (std::size_t j = 0; j < m.cols; ++j) {
      out += ',';
      append_double(out, m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---- subcommand handlers ----

int cmd_synth(CLI::App* cmd, Opts& o) {
  KvPairs kv;
  if (!o.config.empty()) kv = parse_kv_file(o.config);
  SynthConfig cfg = synth_config_from_kv(kv);
  if (cmd->count("--seed")) cfg.seed = o.seed;
  if (cmd->count("--users"))
    cfg.n_users = static_cast<std::uint32_t>(o.users);
  if (cmd->count("--months")) cfg.window_months = o.months;
  if (cmd->count("--scale")) cfg.activity_scale = o.scale;
  if (cmd->count("--label-fraction")) cfg.label_fraction = o.label_fraction;

  const std::string dir = out_dir(o, "synth_out");
  std::filesystem::create_directories(dir);
  write_synth_dataset(cfg, dir);

  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.canonical_text())));
  std::cout << "cdr=" << dir << "/cdr.csv\n"
            << "sms=" << dir << "/sms.csv\n"
            << "clients=" << dir << "/clients.csv\n"
            << "truth=" << dir << "/truth.csv\n"
            << "seed=" << cfg.seed << '\n'
            << "config_hash=" << hash << '\n';
  return 0;
}

int cmd_ingest(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const std::string summary = ingest_summary_text(ds);
  std::cout << summary;
  if (cmd->count("--out"))
    emit_file(o.out, "ingest.txt", stamp_line("demograph ingest", kv), summary);
  return 0;
}

int cmd_features(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const RowMatrix feats = extract_features(ds);
  const std::string path =
      emit_file(out_dir(o, "out"), "features.csv",
                stamp_line("demograph features", kv),
                features_csv(ds.users, ds.clients, feats));
  std::cout << "features=" << path << '\n'
            << "rows=" << ds.clients.size() << '\n';
  return 0;
}

int cmd_preprocess(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  RowMatrix wide = widen_with_logs(extract_features(ds));
  const std::vector<std::string> names = model_column_names();

  std::vector<ColumnSummary> summaries;
  summaries.reserve(wide.cols);
  std::vector<double> column(wide.rows);
  for (std::size_t j = 0; j < wide.cols; ++j) {
    for (std::size_t i = 0; i < wide.rows; ++i) column[i] = wide.at(i, j);
    summaries.push_back(summarize_column(column));
  }
  const ScalingParams scale = fit_minmax(wide);

  const std::string dir = out_dir(o, "out");
  const std::string stamp = stamp_line("demograph preprocess", kv);
  std::cout << "summaries="
            << emit_file(dir, "summaries.csv", stamp,
                         column_summaries_csv(summaries, names))
            << '\n';
  std::cout << "scaling="
            << emit_file(dir, "scaling.csv", stamp,
                         scaling_params_csv(scale, names))
            << '\n';
  if (o.matrix) {
    apply_minmax(wide, scale);
    std::cout << "model_matrix="
              << emit_file(dir, "model_matrix.csv", stamp,
                           matrix_csv(ds.users, ds.clients, wide, names))
              << '\n';
  }
  return 0;
}

int cmd_analyze(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const RowMatrix mm = assemble_model_matrix(extract_features(ds));
  const std::vector<std::string> names = model_column_names();

  // Compute everything before writing anything, so a failed analysis does
  // not leave a half-written artifact set behind.
  std::vector<std::pair<std::string, std::string>> artifacts;
  artifacts.emplace_back("pca.csv", pca_csv(pca(mm)));

  std::vector<int> gender(ds.clients.size(), -1);
  std::vector<std::vector<double>> age_groups(AgeGroups::kCount);
  const auto names_begin = feature_names().begin();
  const auto names_end = feature_names().end();
  const auto it = std::find(names_begin, names_end, "call_seconds_in_total");
  const std::size_t tukey_col =
      static_cast<std::size_t>(it - names_begin) + kNumFeatures;  // log copy
  for (std::size_t i = 0; i < ds.clients.size(); ++i) {
    const NodeId n = ds.clients[i];
    if (!ds.has_label[n]) continue;
    const DemographicLabel& label = ds.labels[n];
    gender[i] = static_cast<int>(label.gender);
    age_groups[static_cast<std::size_t>(label.age_group())].push_back(
        mm.at(i, tukey_col));
  }
  artifacts.emplace_back(
      "gender_ttest.csv",
      gender_means_csv(gender_group_means(mm, gender), names));
  artifacts.emplace_back("gender_mix.csv",
                         gender_mix_csv(gender_mix(ds.graph, ds.has_label,
                                                   ds.labels)));
  artifacts.emplace_back("age_tukey.csv", tukey_csv(tukey_hsd(age_groups)));
  artifacts.emplace_back(
      "age_links.csv",
      age_link_matrix_csv(age_link_matrix(ds.graph, ds.has_label, ds.labels)));
  artifacts.emplace_back(
      "age_diff_hist.csv",
      age_diff_hist_csv(age_diff_histogram(ds.graph, ds.has_label,
                                           ds.labels)));

  const std::string dir = out_dir(o, "out");
  const std::string stamp = stamp_line("demograph analyze", kv);
  for (const auto& [name, content] : artifacts)
    std::cout << name.substr(0, name.size() - 4) << '='
              << emit_file(dir, name, stamp, content) << '\n';
  return 0;
}

int cmd_train(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const PipelineParams p = make_params(cmd, o, kv);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const SplitResult split =
      split_ground_truth(ds, p.task, p.train_fraction, p.seed);
  const MlFit fit = fit_task_model(ds, p, split);

  const std::string dir = out_dir(o, "out");
  const std::string stamp = stamp_line(params_detail("train", p), kv);
  if (fit.grid_run)
    std::cout << "grid="
              << emit_file(dir, "grid.csv", stamp, grid_report_csv(fit.grid))
              << '\n';
  std::cout << "model="
            << emit_file(dir, "model.txt", stamp, model_to_text(fit.model))
            << '\n';
  std::cout << "scaling="
            << emit_file(dir, "scaling.csv", stamp,
                         scaling_params_csv(fit.scaling, model_column_names()))
            << '\n';
  std::cout << "train_rows=" << split.train.size() << '\n'
            << "validation_rows=" << split.validation.size() << '\n'
            << "C=" << format_double(fit.grid_run ? fit.grid.best.C : p.C)
            << '\n'
            << "k=" << (fit.grid_run ? fit.grid.best.k : p.top_k) << '\n'
            << "selected_features=" << fit.model.feature_cols.size() << '\n';
  return 0;
}

int cmd_propagate(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const PipelineParams p = make_params(cmd, o, kv);
  if (p.method == Method::ml)
    throw UsageError("propagate requires --method rdif or ml+rdif");
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const SplitResult split =
      split_ground_truth(ds, p.task, p.train_fraction, p.seed);
  const int n_cat = task_categories(p.task);

  std::vector<int> anchors(ds.num_users(), -1);
  for (NodeId n : split.train)
    anchors[n] = node_category(ds.labels[n], p.task);

  const std::string dir = out_dir(o, "out");
  LabelState state;
  if (p.method == Method::rdif) {
    state = init_state_pure(ds.graph, anchors, n_cat, p.lambda);
  } else {
    const RowMatrix all = client_proba_from_artifacts(ds, dir);
    const std::vector<NodeId> population =
        prediction_population(ds, split.train);
    const RowMatrix init = rows_for_nodes_from_clients(all, ds, population);
    state = init_state_combined(ds.graph, anchors, population, init, n_cat,
                                p.lambda);
  }
  const std::vector<double> residuals =
      propagate(state, ds.graph, p.iters, p.early_stop);

  const std::string stamp = stamp_line(params_detail("propagate", p), kv);
  std::cout << "state="
            << emit_file(dir, "state.txt", stamp, state_to_text(state))
            << '\n';
  std::cout << "residuals="
            << emit_file(dir, "residuals.csv", stamp,
                         residual_log_csv(residuals))
            << '\n';
  std::cout << "iterations=" << residuals.size() << '\n';
  if (!residuals.empty())
    std::cout << "final_residual=" << format_double(residuals.back()) << '\n';
  return 0;
}

int cmd_pps(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const PipelineParams p = make_params(cmd, o, kv);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const SplitResult split =
      split_ground_truth(ds, p.task, p.train_fraction, p.seed);
  const std::vector<NodeId> population =
      prediction_population(ds, split.train);

  const std::string dir = out_dir(o, "out");
  RowMatrix proba;
  if (p.method == Method::ml) {
    const RowMatrix all = client_proba_from_artifacts(ds, dir);
    proba = rows_for_nodes_from_clients(all, ds, population);
  } else {
    const LabelState state =
        state_from_text(require_artifact(dir, "state.txt", "propagate"));
    if (state.g.rows != ds.num_users())
      throw DataError("saved state covers " + std::to_string(state.g.rows) +
                      " nodes but the dataset has " +
                      std::to_string(ds.num_users()));
    if (state.n_classes != task_categories(p.task))
      throw DataError("saved state has " + std::to_string(state.n_classes) +
                      " categories; task " + task_name(p.task) + " needs " +
                      std::to_string(task_categories(p.task)));
    proba = rows_for_nodes_from_state(state.g, population);
  }

  const std::vector<double> shares = category_shares(ds, p.task, split.train);
  const std::vector<std::string> cat_names = task_category_names(p.task);
  const std::string stamp = stamp_line(params_detail("pps", p), kv);
  for (double q : p.qs) {
    const QuotaPlan plan = compute_quotas(population.size(), q, shares);
    const PpsAssignment asg = pps_assign(proba, plan);
    const std::string name = "assignment_q" + format_double(q) + ".csv";
    std::cout << "assignment="
              << emit_file(dir, name, stamp,
                           assignments_csv(ds.users, population, proba, asg,
                                           cat_names))
              << '\n';
    std::cout << "q=" << format_double(q) << " quota=" << plan.total << '\n';
  }
  return 0;
}

int cmd_evaluate(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const PipelineParams p = make_params(cmd, o, kv);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));
  const SplitResult split =
      split_ground_truth(ds, p.task, p.train_fraction, p.seed);
  const std::vector<NodeId> population =
      prediction_population(ds, split.train);
  const std::vector<double> shares = category_shares(ds, p.task, split.train);

  const std::string dir = out_dir(o, "out");
  EvalReport report;
  report.task = p.task;
  report.method = p.method;
  report.population = population.size();
  report.target_distribution = shares;
  for (double q : p.qs) {
    const std::string name = "assignment_q" + format_double(q) + ".csv";
    const auto assigned =
        parse_assignments_csv(ds, p.task, require_artifact(dir, name, "pps"));
    const QuotaPlan plan = compute_quotas(population.size(), q, shares);
    report.rows.push_back(evaluate_assignment_list(ds, p.task, assigned,
                                                   split.validation, q,
                                                   plan.total,
                                                   population.size()));
  }
  const std::string text = report_csv(report);
  emit_file(dir, "report.csv", stamp_line(params_detail("evaluate", p), kv),
            text);
  std::cout << text;
  return 0;
}

int cmd_run(CLI::App* cmd, Opts& o) {
  const KvPairs kv = load_pipeline_kv(o);
  const PipelineParams p = make_params(cmd, o, kv);
  const Dataset ds = ingest(make_ingest_options(cmd, o, kv));

  const std::string dir = out_dir(o, "out");
  std::filesystem::create_directories(dir);
  const ArtifactSink sink = [&dir](const std::string& name,
                                   const std::string& content) {
    write_text_file(dir + "/" + name, content);
  };
  const EvalReport report =
      run_pipeline(ds, p, &sink, stamp_line(params_detail("run", p), kv));
  std::cout << report_csv(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "demograph: demographic inference from call and SMS logs\n"
      "Stages share an artifact directory (--out) and accept key = value\n"
      "configuration from --config or piped standard input; flags win."};
  app.require_subcommand(1);

  Opts o;

  const auto add_io = [&o](CLI::App* c) {
    c->add_option("--cdr", o.cdr, "call log CSV");
    c->add_option("--sms", o.sms, "SMS log CSV");
    c->add_option("--clients", o.clients,
                  "client list, one user id per line (default: every user "
                  "seen in the logs)");
    c->add_option("--truth", o.truth, "ground truth CSV (user_id,gender,age)");
    c->add_option("--config", o.config, "key = value configuration file");
    c->add_option("--out", o.out, "artifact directory (default: out)");
  };
  const auto add_task = [&o](CLI::App* c) {
    c->add_option("--task", o.task, "gender or age")
        ->check(CLI::IsMember({"gender", "age"}));
    c->add_option("--seed", o.seed, "seed for the split and the trainers");
    c->add_option("--train-fraction", o.train_fraction,
                  "labeled fraction used for training (rest validates)");
  };
  const auto add_method = [&o](CLI::App* c) {
    c->add_option("--method", o.method, "ml, rdif or ml+rdif")
        ->check(CLI::IsMember({"ml", "rdif", "ml+rdif"}));
  };
  const auto add_q = [&o](CLI::App* c) {
    c->add_option("--q", o.q_args,
                  "coverage fraction(s) in (0, 1]; repeatable or "
                  "comma-separated");
  };
  const auto add_train_knobs = [&o](CLI::App* c) {
    c->add_option("--C", o.C, "loss weight");
    c->add_option("--k", o.top_k, "features kept by the ANOVA filter");
    c->add_flag("--grid", o.grid, "sweep C x k on a nested split");
  };
  const auto add_diffusion = [&o](CLI::App* c) {
    c->add_option("--lambda", o.lambda, "diffusion weight in [0, 1]");
    c->add_option("--iters", o.iters, "diffusion iterations");
  };

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a synthetic dataset with planted structure");
  synth->add_option("--config", o.config, "key = value generator config");
  synth->add_option("--out", o.out, "output directory (default: synth_out)");
  synth->add_option("--seed", o.seed, "generator seed");
  synth->add_option("--users", o.users, "population size");
  synth->add_option("--months", o.months, "observation window length");
  synth->add_option("--scale", o.scale, "global activity multiplier");
  synth->add_option("--label-fraction", o.label_fraction,
                    "share of users with a ground-truth row");

  CLI::App* ingest_cmd = app.add_subcommand(
      "ingest", "load the logs and print dataset counters");
  add_io(ingest_cmd);

  CLI::App* features_cmd = app.add_subcommand(
      "features", "extract the per-user behavioral features");
  add_io(features_cmd);

  CLI::App* preprocess_cmd = app.add_subcommand(
      "preprocess", "summarize and rescale the model variables");
  add_io(preprocess_cmd);
  preprocess_cmd->add_flag("--matrix", o.matrix,
                           "also write the rescaled model matrix");

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "observational statistics (PCA, group tests, mixing)");
  add_io(analyze_cmd);

  CLI::App* train_cmd = app.add_subcommand(
      "train", "fit the task classifier on the training split");
  add_io(train_cmd);
  add_task(train_cmd);
  add_train_knobs(train_cmd);

  CLI::App* propagate_cmd = app.add_subcommand(
      "propagate", "diffuse labels over the communication graph");
  add_io(propagate_cmd);
  add_task(propagate_cmd);
  add_method(propagate_cmd);
  add_diffusion(propagate_cmd);

  CLI::App* pps_cmd = app.add_subcommand(
      "pps", "collapse probabilities under population quotas");
  add_io(pps_cmd);
  add_task(pps_cmd);
  add_method(pps_cmd);
  add_q(pps_cmd);

  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "score saved assignments against the validation split");
  add_io(evaluate_cmd);
  add_task(evaluate_cmd);
  add_method(evaluate_cmd);
  add_q(evaluate_cmd);

  CLI::App* run_cmd = app.add_subcommand(
      "run", "full protocol: split, fit/propagate, collapse, score");
  add_io(run_cmd);
  add_task(run_cmd);
  add_method(run_cmd);
  add_q(run_cmd);
  add_train_knobs(run_cmd);
  add_diffusion(run_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth, o);
    if (ingest_cmd->parsed()) return cmd_ingest(ingest_cmd, o);
    if (features_cmd->parsed()) return cmd_features(features_cmd, o);
    if (preprocess_cmd->parsed()) return cmd_preprocess(preprocess_cmd, o);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_cmd, o);
    if (train_cmd->parsed()) return cmd_train(train_cmd, o);
    if (propagate_cmd->parsed()) return cmd_propagate(propagate_cmd, o);
    if (pps_cmd->parsed()) return cmd_pps(pps_cmd, o);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_cmd, o);
    if (run_cmd->parsed()) return cmd_run(run_cmd, o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
