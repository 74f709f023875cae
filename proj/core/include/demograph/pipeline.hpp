#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "demograph/classifiers.hpp"
#include "demograph/dataset.hpp"
#include "demograph/matrix.hpp"
#include "demograph/pps.hpp"
#include "demograph/preprocess.hpp"

namespace demograph {

enum class Task { gender, age };
enum class Method { ml, rdif, ml_rdif };

const char* task_name(Task t);
const char* method_name(Method m);
int task_categories(Task t);
std::vector<std::string> task_category_names(Task t);
// The demographic label's category under the task (gender index or age
// group).
int node_category(const DemographicLabel& label, Task t);

struct SplitResult {
  std::vector<NodeId> train;       // ascending
  std::vector<NodeId> validation;  // ascending
};

// Seeded stratified split of the labeled nodes by task category. Every
// category keeps at least one node on each side; categories with fewer
// than 2 labeled nodes are an error.
SplitResult split_ground_truth(const Dataset& ds, Task task, double fraction,
                               std::uint64_t seed);

struct PipelineParams {
  Task task = Task::age;
  Method method = Method::rdif;
  std::vector<double> qs{1.0, 0.5, 0.25, 0.125};
  double lambda = 0.5;
  int iters = 30;
  std::uint64_t seed = 1;
  double train_fraction = 0.7;
  double early_stop = 1e-9;
  // Fixed training point used unless grid is set; top_k clamps to the
  // model-matrix width, so the default trains on all columns.
  double C = 10;
  int top_k = 100;
  // Sweep C x k on a nested split of the training rows, then refit the
  // winner on the full training set.
  bool grid = false;
  TrainOptions train;
};

// Everything the classifier leg produces. Scaling, feature selection and
// the fit itself see only training rows.
struct MlFit {
  LinearModel model;
  ScalingParams scaling;
  RowMatrix client_proba;  // one probability row per client
  GridSearchResult grid;   // populated when params.grid is set
  bool grid_run = false;
};

MlFit fit_task_model(const Dataset& ds, const PipelineParams& p,
                     const SplitResult& split);

// Clients minus the training nodes: the population PPS covers a q-fraction
// of. Ascending.
std::vector<NodeId> prediction_population(const Dataset& ds,
                                          const std::vector<NodeId>& train);

// Empirical category distribution of the given labeled nodes.
std::vector<double> category_shares(const Dataset& ds, Task task,
                                    const std::vector<NodeId>& nodes);

struct EvalRow {
  double q = 1;
  std::size_t quota_total = 0;     // PPS assignment budget
  std::size_t assigned = 0;        // nodes actually assigned
  std::size_t assigned_validation = 0;
  std::size_t correct = 0;
  bool accuracy_defined = false;   // false when no validation node was assigned
  double accuracy = 0;             // correct / assigned_validation
  double coverage = 0;             // assigned / prediction population
};

struct EvalReport {
  Task task = Task::age;
  Method method = Method::rdif;
  std::size_t population = 0;  // prediction population (clients minus train)
  std::vector<EvalRow> rows;   // one per requested q
  // Share of each category under plain argmax over the prediction
  // population (the uncollapsed model output), next to the training priors
  // the quotas aim for.
  std::vector<double> predicted_distribution;
  std::vector<double> target_distribution;
  // True category (rows) x argmax prediction (columns) over every
  // validation node; row sums equal per-category validation counts.
  std::vector<std::uint64_t> confusion;
};

// Scores one quota assignment against the validation labels. `pop_nodes`
// names the proba rows; `validation` must be ascending. Only this function
// (and the report emitters) ever read validation labels.
EvalRow evaluate_accuracy(const Dataset& ds, Task task,
                          const std::vector<NodeId>& pop_nodes,
                          const PpsAssignment& asg,
                          const std::vector<NodeId>& validation, double q,
                          std::size_t quota_total);

// Same scoring over an explicit (node, category) list, for re-evaluating a
// saved assignment artifact. `population` sizes the coverage denominator.
EvalRow evaluate_assignment_list(
    const Dataset& ds, Task task,
    const std::vector<std::pair<NodeId, int>>& assigned,
    const std::vector<NodeId>& validation, double q, std::size_t quota_total,
    std::size_t population);

// Reads an assignments_csv artifact back into (node, category) pairs.
// Unassigned (flagged) rows are dropped; unknown ids or category labels are
// an error.
std::vector<std::pair<NodeId, int>> parse_assignments_csv(const Dataset& ds,
                                                          Task task,
                                                          std::string_view text);

// Receives every artifact the pipeline produces (file name, full content).
using ArtifactSink =
    std::function<void(const std::string& name, const std::string& content)>;

// Full protocol: split, fit/propagate per `method`, collapse with PPS at
// each q, score. Artifacts (model, residual log, assignments, report
// tables) go to `sink` when given, each prefixed with `stamp` (pass "" for
// none). Training, propagation and quota collapse never see validation
// labels.
EvalReport run_pipeline(const Dataset& ds, const PipelineParams& p,
                        const ArtifactSink* sink = nullptr,
                        const std::string& stamp = "");

// Report emitters.
std::string report_csv(const EvalReport& r);
std::string distribution_csv(const EvalReport& r);
std::string confusion_csv(const EvalReport& r);

// Human-readable ingest summary (counts, window, rejects).
std::string ingest_summary_text(const Dataset& ds);

}  // namespace demograph
