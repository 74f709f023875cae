#include "demograph/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "demograph/civil.hpp"
#include "demograph/common.hpp"
#include "demograph/features.hpp"
#include "demograph/io.hpp"
#include "demograph/preprocess.hpp"
#include "demograph/propagation.hpp"
#include "demograph/rng.hpp"

namespace demograph {

namespace {

constexpr std::uint64_t kStreamSplit = 11ull << 40;
constexpr std::uint64_t kStreamGridSplit = 12ull << 40;

void seeded_shuffle(std::vector<NodeId>& v, Rng& r) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[r.uniform_int(i)]);
}

}  // namespace

const char* task_name(Task t) { return t == Task::gender ? "gender" : "age"; }

const char* method_name(Method m) {
  switch (m) {
    case Method::ml:
      return "ml";
    case Method::rdif:
      return "rdif";
    case Method::ml_rdif:
      return "ml+rdif";
  }
  return "?";
}

int task_categories(Task t) {
  return t == Task::gender ? 2 : AgeGroups::kCount;
}

std::vector<std::string> task_category_names(Task t) {
  if (t == Task::gender) return {"M", "F"};
  std::vector<std::string> names;
  for (int g = 0; g < AgeGroups::kCount; ++g)
    names.emplace_back(AgeGroups::name(g));
  return names;
}

int node_category(const DemographicLabel& label, Task t) {
  return t == Task::gender ? static_cast<int>(label.gender)
                           : label.age_group();
}

SplitResult split_ground_truth(const Dataset& ds, Task task, double fraction,
                               std::uint64_t seed) {
  if (!(fraction > 0 && fraction < 1))
    throw DataError("split fraction must lie in (0, 1)");
  const int n_cat = task_categories(task);
  std::vector<std::vector<NodeId>> buckets(static_cast<std::size_t>(n_cat));
  for (NodeId n : ds.labeled)
    buckets[static_cast<std::size_t>(node_category(ds.labels[n], task))]
        .push_back(n);

  SplitResult out;
  for (int c = 0; c < n_cat; ++c) {
    auto& bucket = buckets[static_cast<std::size_t>(c)];
    if (bucket.size() < 2)
      throw DataError(std::string("category ") +
                      task_category_names(task)[static_cast<std::size_t>(c)] +
                      " has fewer than 2 labeled users; cannot split");
    Rng r(seed, kStreamSplit | static_cast<std::uint64_t>(c));
    seeded_shuffle(bucket, r);
    // Both sides keep at least one node per category.
    const auto want = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(bucket.size())));
    const std::size_t n_train = std::clamp<std::size_t>(want, 1,
                                                        bucket.size() - 1);
    out.train.insert(out.train.end(), bucket.begin(), bucket.begin() + n_train);
    out.validation.insert(out.validation.end(), bucket.begin() + n_train,
                          bucket.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  return out;
}

namespace {

struct CommonEval {
  std::vector<NodeId> population;  // clients minus train, ascending
  std::vector<std::uint32_t> train_rows;  // client-row indices of train nodes
  std::vector<int> y_clients;  // train categories per client row, else -1
};

CommonEval prepare_eval(const Dataset& ds, Task task, const SplitResult& split) {
  CommonEval ce;
  ce.population = prediction_population(ds, split.train);

  std::vector<std::uint32_t> row_of(ds.num_users(), kNoNode);
  for (std::size_t i = 0; i < ds.clients.size(); ++i)
    row_of[ds.clients[i]] = static_cast<std::uint32_t>(i);

  ce.y_clients.assign(ds.clients.size(), -1);
  ce.train_rows.reserve(split.train.size());
  for (NodeId n : split.train) {
    const std::uint32_t row = row_of[n];
    // ground truth is always a client subset, enforced at load time
    ce.train_rows.push_back(row);
    ce.y_clients[row] = node_category(ds.labels[n], task);
  }
  return ce;
}

// Nested stratified split of the training rows for grid-search scoring.
void grid_split(const std::vector<std::uint32_t>& train_rows,
                const std::vector<int>& y, int n_cat, std::uint64_t seed,
                std::vector<std::uint32_t>& fit_rows,
                std::vector<std::uint32_t>& score_rows) {
  std::vector<std::vector<std::uint32_t>> buckets(
      static_cast<std::size_t>(n_cat));
  for (std::uint32_t r : train_rows)
    buckets[static_cast<std::size_t>(y[r])].push_back(r);
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    auto& bucket = buckets[c];
    if (bucket.size() < 2)
      throw DataError("grid search needs at least 2 training rows per "
                      "category");
    Rng r(seed, kStreamGridSplit | c);
    for (std::size_t i = bucket.size(); i > 1; --i)
      std::swap(bucket[i - 1], bucket[r.uniform_int(i)]);
    const std::size_t n_fit = std::clamp<std::size_t>(
        static_cast<std::size_t>(
            std::llround(0.7 * static_cast<double>(bucket.size()))),
        1, bucket.size() - 1);
    fit_rows.insert(fit_rows.end(), bucket.begin(), bucket.begin() + n_fit);
    score_rows.insert(score_rows.end(), bucket.begin() + n_fit, bucket.end());
  }
  std::sort(fit_rows.begin(), fit_rows.end());
  std::sort(score_rows.begin(), score_rows.end());
}

void emit(const ArtifactSink* sink, const std::string& stamp,
          const std::string& name, const std::string& content) {
  if (sink) (*sink)(name, stamp + content);
}

// Runs the classifier leg and writes its artifacts through the sink.
RowMatrix ml_client_proba(const Dataset& ds, const PipelineParams& p,
                          const SplitResult& split, const ArtifactSink* sink,
                          const std::string& stamp) {
  MlFit fit = fit_task_model(ds, p, split);
  if (fit.grid_run) emit(sink, stamp, "grid.csv", grid_report_csv(fit.grid));
  emit(sink, stamp, "model.txt", model_to_text(fit.model));
  emit(sink, stamp, "scaling.csv",
       scaling_params_csv(fit.scaling, model_column_names()));
  return std::move(fit.client_proba);
}

RowMatrix gather_population_rows(const RowMatrix& all, const Dataset& ds,
                                 const std::vector<NodeId>& population,
                                 bool rows_are_nodes) {
  std::vector<std::uint32_t> row_of;
  if (!rows_are_nodes) {
    row_of.assign(ds.num_users(), kNoNode);
    for (std::size_t i = 0; i < ds.clients.size(); ++i)
      row_of[ds.clients[i]] = static_cast<std::uint32_t>(i);
  }
  RowMatrix out(population.size(), all.cols);
  for (std::size_t i = 0; i < population.size(); ++i) {
    const std::size_t src =
        rows_are_nodes ? population[i] : row_of[population[i]];
    std::copy_n(all.row(src), all.cols, out.row(i));
  }
  return out;
}

}  // namespace

std::vector<NodeId> prediction_population(const Dataset& ds,
                                          const std::vector<NodeId>& train) {
  std::vector<NodeId> population;
  population.reserve(ds.clients.size());
  std::set_difference(ds.clients.begin(), ds.clients.end(), train.begin(),
                      train.end(), std::back_inserter(population));
  if (population.empty())
    throw DataError("prediction population is empty (every client is a "
                    "training label)");
  return population;
}

std::vector<double> category_shares(const Dataset& ds, Task task,
                                    const std::vector<NodeId>& nodes) {
  if (nodes.empty()) throw DataError("no nodes to take category shares from");
  std::vector<double> shares(static_cast<std::size_t>(task_categories(task)),
                             0.0);
  for (NodeId n : nodes)
    shares[static_cast<std::size_t>(node_category(ds.labels[n], task))] += 1;
  for (double& s : shares) s /= static_cast<double>(nodes.size());
  return shares;
}

// Classifier leg under the no-leakage protocol: scaling, feature selection
// and the fit all see training rows only.
MlFit fit_task_model(const Dataset& ds, const PipelineParams& p,
                     const SplitResult& split) {
  const CommonEval ce = prepare_eval(ds, p.task, split);
  RowMatrix m = widen_with_logs(extract_features(ds));

  MlFit fit;
  fit.scaling = fit_minmax(m, &ce.train_rows);
  apply_minmax(m, fit.scaling);

  const Algorithm algo = p.task == Task::gender
                             ? Algorithm::linear_svm_l1loss
                             : Algorithm::multinomial_logistic;
  // The binary trainers take sign labels (female +1, male -1); the
  // multiclass path takes category indices. Stratification below keeps
  // using the category indices either way.
  std::vector<int> y_fit = ce.y_clients;
  if (p.task == Task::gender)
    for (std::uint32_t r : ce.train_rows)
      y_fit[r] = ce.y_clients[r] == 1 ? 1 : -1;

  double C = p.C;
  int k = p.top_k;
  if (p.grid) {
    std::vector<std::uint32_t> fit_rows, score_rows;
    grid_split(ce.train_rows, ce.y_clients, task_categories(p.task), p.seed,
               fit_rows, score_rows);
    fit.grid = grid_search(m, y_fit, algo, {0.1, 0.3, 1, 3, 10},
                           {10, 30, 100}, fit_rows, score_rows, p.train);
    fit.grid_run = true;
    C = fit.grid.best.C;
    k = fit.grid.best.k;
  }
  const int k_eff = std::min<int>(k, static_cast<int>(m.cols));
  const std::vector<std::uint32_t> cols =
      select_top_k_features(m, ce.train_rows, y_fit, k_eff);

  TrainOptions opt = p.train;
  opt.seed = p.seed;
  TrainResult tr;
  switch (algo) {
    case Algorithm::linear_svm_l1loss:
      tr = train_linear_svm(m, ce.train_rows, y_fit, cols, C, opt);
      break;
    case Algorithm::multinomial_logistic:
      tr = train_multinomial_logistic(m, ce.train_rows, y_fit, cols, C, opt);
      break;
    case Algorithm::logreg_l1:
      tr = train_logreg_l1(m, ce.train_rows, y_fit, cols, C, opt);
      break;
  }
  fit.model = std::move(tr.model);
  fit.client_proba = predict_proba(fit.model, m);
  return fit;
}

EvalRow evaluate_accuracy(const Dataset& ds, Task task,
                          const std::vector<NodeId>& pop_nodes,
                          const PpsAssignment& asg,
                          const std::vector<NodeId>& validation, double q,
                          std::size_t quota_total) {
  if (asg.category.size() != pop_nodes.size())
    throw DataError("assignment size does not match the population");
  EvalRow row;
  row.q = q;
  row.quota_total = quota_total;
  for (std::size_t i = 0; i < pop_nodes.size(); ++i) {
    const int cat = asg.category[i];
    if (cat < 0) continue;
    ++row.assigned;
    const NodeId node = pop_nodes[i];
    if (!std::binary_search(validation.begin(), validation.end(), node))
      continue;
    ++row.assigned_validation;
    if (cat == node_category(ds.labels[node], task)) ++row.correct;
  }
  row.accuracy_defined = row.assigned_validation > 0;
  row.accuracy = row.accuracy_defined
                     ? static_cast<double>(row.correct) /
                           static_cast<double>(row.assigned_validation)
                     : 0.0;
  row.coverage = pop_nodes.empty()
                     ? 0.0
                     : static_cast<double>(row.assigned) /
                           static_cast<double>(pop_nodes.size());
  return row;
}

EvalRow evaluate_assignment_list(
    const Dataset& ds, Task task,
    const std::vector<std::pair<NodeId, int>>& assigned,
    const std::vector<NodeId>& validation, double q, std::size_t quota_total,
    std::size_t population) {
  EvalRow row;
  row.q = q;
  row.quota_total = quota_total;
  row.assigned = assigned.size();
  for (const auto& [node, cat] : assigned) {
    if (!std::binary_search(validation.begin(), validation.end(), node))
      continue;
    ++row.assigned_validation;
    if (cat == node_category(ds.labels[node], task)) ++row.correct;
  }
  row.accuracy_defined = row.assigned_validation > 0;
  row.accuracy = row.accuracy_defined
                     ? static_cast<double>(row.correct) /
                           static_cast<double>(row.assigned_validation)
                     : 0.0;
  row.coverage = population == 0 ? 0.0
                                 : static_cast<double>(row.assigned) /
                                       static_cast<double>(population);
  return row;
}

std::vector<std::pair<NodeId, int>> parse_assignments_csv(
    const Dataset& ds, Task task, std::string_view text) {
  const std::vector<std::string> names = task_category_names(task);
  std::vector<std::pair<NodeId, int>> out;
  std::string_view rest = strip_stamp(text);
  bool header = true;
  while (!rest.empty()) {
    std::size_t eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{}
                                         : rest.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    // user_id,category,probability,assigned_rank
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos
                               ? std::string_view::npos
                               : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
      throw DataError("assignment row needs 4 fields: '" + std::string(line) +
                      "'");
    const std::string_view user = line.substr(0, c1);
    const std::string_view cat_name = line.substr(c1 + 1, c2 - c1 - 1);
    if (cat_name.empty()) continue;  // flagged unassigned row
    const NodeId node = ds.users.lookup(user);
    if (node == kNoNode)
      throw DataError("assignment names unknown user '" + std::string(user) +
                      "'");
    const auto it = std::find(names.begin(), names.end(), cat_name);
    if (it == names.end())
      throw DataError("assignment names unknown category '" +
                      std::string(cat_name) + "'");
    out.emplace_back(node, static_cast<int>(it - names.begin()));
  }
  return out;
}

EvalReport run_pipeline(const Dataset& ds, const PipelineParams& p,
                        const ArtifactSink* sink, const std::string& stamp) {
  if (p.qs.empty()) throw DataError("no q values requested");
  for (double q : p.qs)
    if (!(q > 0 && q <= 1)) throw DataError("q must lie in (0, 1]");
  if (!(p.lambda >= 0 && p.lambda <= 1))
    throw DataError("lambda must lie in [0, 1]");
  if (p.iters < 0) throw DataError("iteration count must be >= 0");

  const SplitResult split =
      split_ground_truth(ds, p.task, p.train_fraction, p.seed);
  const CommonEval ce = prepare_eval(ds, p.task, split);
  const int n_cat = task_categories(p.task);

  // Per-population-row probability matrix, by method.
  RowMatrix proba;
  if (p.method == Method::ml) {
    const RowMatrix all = ml_client_proba(ds, p, split, sink, stamp);
    proba = gather_population_rows(all, ds, ce.population, false);
  } else {
    std::vector<int> anchors(ds.num_users(), -1);
    for (NodeId n : split.train)
      anchors[n] = node_category(ds.labels[n], p.task);
    LabelState state;
    if (p.method == Method::rdif) {
      state = init_state_pure(ds.graph, anchors, n_cat, p.lambda);
    } else {
      const RowMatrix all = ml_client_proba(ds, p, split, sink, stamp);
      const RowMatrix init = gather_population_rows(all, ds, ce.population,
                                                    false);
      state = init_state_combined(ds.graph, anchors, ce.population, init,
                                  n_cat, p.lambda);
    }
    const std::vector<double> residuals =
        propagate(state, ds.graph, p.iters, p.early_stop);
    emit(sink, stamp, "residuals.csv", residual_log_csv(residuals));
    proba = gather_population_rows(state.g, ds, ce.population, true);
  }

  EvalReport report;
  report.task = p.task;
  report.method = p.method;
  report.population = ce.population.size();
  report.target_distribution = category_shares(ds, p.task, split.train);

  // Raw argmax sketch: output distribution plus the validation confusion.
  report.predicted_distribution.assign(static_cast<std::size_t>(n_cat), 0.0);
  report.confusion.assign(static_cast<std::size_t>(n_cat * n_cat), 0);
  std::vector<int> argmax(ce.population.size(), 0);
  for (std::size_t i = 0; i < ce.population.size(); ++i) {
    const double* row = proba.row(i);
    int best = 0;
    for (int c = 1; c < n_cat; ++c)
      if (row[c] > row[best]) best = c;
    argmax[i] = best;
    report.predicted_distribution[static_cast<std::size_t>(best)] += 1;
  }
  for (double& s : report.predicted_distribution)
    s /= static_cast<double>(ce.population.size());
  for (NodeId v : split.validation) {
    // validation c population: labeled nodes are clients and the split is
    // disjoint from train
    const auto it =
        std::lower_bound(ce.population.begin(), ce.population.end(), v);
    if (it == ce.population.end() || *it != v)
      throw DataError("validation node missing from the prediction population");
    const auto i = static_cast<std::size_t>(it - ce.population.begin());
    const int truth = node_category(ds.labels[v], p.task);
    report.confusion[static_cast<std::size_t>(truth * n_cat + argmax[i])] += 1;
  }

  const std::vector<std::string> cat_names = task_category_names(p.task);
  for (double q : p.qs) {
    const QuotaPlan plan =
        compute_quotas(ce.population.size(), q, report.target_distribution);
    const PpsAssignment asg = pps_assign(proba, plan);
    report.rows.push_back(evaluate_accuracy(ds, p.task, ce.population, asg,
                                            split.validation, q, plan.total));
    emit(sink, stamp, "assignment_q" + format_double(q) + ".csv",
         assignments_csv(ds.users, ce.population, proba, asg, cat_names));
  }

  emit(sink, stamp, "report.csv", report_csv(report));
  emit(sink, stamp, "distribution.csv", distribution_csv(report));
  emit(sink, stamp, "confusion.csv", confusion_csv(report));
  return report;
}

std::string report_csv(const EvalReport& r) {
  std::string out =
      "task,method,q,quota,assigned,assigned_validation,correct,accuracy,"
      "coverage\n";
  for (const EvalRow& row : r.rows) {
    out += task_name(r.task);
    out += ',';
    out += method_name(r.method);
    out += ',';
    append_double(out, row.q);
    out += ',' + std::to_string(row.quota_total);
    out += ',' + std::to_string(row.assigned);
    out += ',' + std::to_string(row.assigned_validation);
    out += ',' + std::to_string(row.correct);
    out += ',';
    if (row.accuracy_defined) append_double(out, row.accuracy);
    out += ',';
    append_double(out, row.coverage);
    out += '\n';
  }
  return out;
}

std::string distribution_csv(const EvalReport& r) {
  const std::vector<std::string> names = task_category_names(r.task);
  std::string out = "category,predicted_share,target_share\n";
  for (std::size_t c = 0; c < names.size(); ++c) {
    out += names[c];
    out += ',';
    append_double(out, r.predicted_distribution[c]);
    out += ',';
    append_double(out, r.target_distribution[c]);
    out += '\n';
  }
  return out;
}

std::string confusion_csv(const EvalReport& r) {
  const std::vector<std::string> names = task_category_names(r.task);
  const auto n = names.size();
  std::string out = "true_category";
  for (const std::string& name : names) out += ',' + name;
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out += names[i];
    for (std::size_t j = 0; j < n; ++j)
      out += ',' + std::to_string(r.confusion[i * n + j]);
    out += '\n';
  }
  return out;
}

std::string ingest_summary_text(const Dataset& ds) {
  std::string out;
  out += "users=" + std::to_string(ds.num_users()) + '\n';
  out += "clients=" + std::to_string(ds.clients.size()) + '\n';
  out += "labeled=" + std::to_string(ds.labeled.size()) + '\n';
  out += "edges=" + std::to_string(ds.graph.num_edges()) + '\n';
  out += "calls=" + std::to_string(ds.accepted_calls) + '\n';
  out += "sms=" + std::to_string(ds.accepted_sms) + '\n';
  if (ds.accepted_calls + ds.accepted_sms > 0) {
    out += "first_event=" + format_timestamp(ds.min_time) + '\n';
    out += "last_event=" + format_timestamp(ds.max_time) + '\n';
    out += "observed_days=" + std::to_string(ds.observed_days()) + '\n';
  }
  const RejectCounters& rj = ds.rejects;
  out += "rejected_total=" + std::to_string(rj.total()) + '\n';
  const std::pair<const char*, std::uint64_t> reasons[] = {
      {"rejected_bad_field_count", rj.bad_field_count},
      {"rejected_bad_timestamp", rj.bad_timestamp},
      {"rejected_bad_duration", rj.bad_duration},
      {"rejected_bad_direction", rj.bad_direction},
      {"rejected_empty_id", rj.empty_id},
      {"rejected_self_loop", rj.self_loop},
      {"rejected_out_of_window", rj.out_of_window},
      {"rejected_bad_gender", rj.bad_gender},
      {"rejected_bad_age", rj.bad_age},
      {"rejected_duplicate_label", rj.duplicate_label},
      {"rejected_subset_violation", rj.subset_violation},
  };
  for (const auto& [name, count] : reasons)
    if (count) out += std::string(name) + '=' + std::to_string(count) + '\n';
  return out;
}

}  // namespace demograph
