#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "demograph/classifiers.hpp"
#include "demograph/interner.hpp"
#include "demograph/matrix.hpp"
#include "demograph/pps.hpp"
#include "demograph/preprocess.hpp"
#include "demograph/propagation.hpp"
#include "demograph/stats.hpp"

namespace demograph {

// Doubles are serialized with std::to_chars (shortest form that parses back
// to the same bits), so artifacts are byte-stable across reruns and never
// lose precision on a save/load round trip.
void append_double(std::string& out, double v);
std::string format_double(double v);

// Strict numeric parsing; the whole view must be consumed (DataError
// otherwise).
double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

void write_text_file(const std::string& path, std::string_view content);

// Pipeline artifacts carry a leading "# ..." provenance stamp; this drops
// any leading comment lines so the readers below accept stamped and bare
// files alike.
std::string_view strip_stamp(std::string_view text);

// key = value configuration text. '#' starts a comment (full line or
// trailing), blank lines are skipped, whitespace around key and value is
// trimmed. Pairs keep file order; a repeated key later in the file wins.
using KvPairs = std::vector<std::pair<std::string, std::string>>;

KvPairs parse_kv_text(std::string_view text);
KvPairs parse_kv_file(const std::string& path);

const std::string* kv_find(const KvPairs& kv, std::string_view key);
std::string kv_string(const KvPairs& kv, std::string_view key,
                      std::string_view fallback);
double kv_double(const KvPairs& kv, std::string_view key, double fallback);
std::int64_t kv_int(const KvPairs& kv, std::string_view key,
                    std::int64_t fallback);
// Comma-separated list of doubles.
std::vector<double> kv_doubles(const KvPairs& kv, std::string_view key,
                               std::vector<double> fallback);

// Report emitters. Each returns complete CSV text with a header row.
std::string features_csv(const Interner& users, const std::vector<NodeId>& rows,
                         const RowMatrix& feats);
std::string column_summaries_csv(const std::vector<ColumnSummary>& summaries,
                                 const std::vector<std::string>& names);

// Column manifest + scaling parameters: index,name,min,max. Round-trips
// through scaling_params_from_csv so prediction runs can reuse training
// scale factors.
std::string scaling_params_csv(const ScalingParams& p,
                               const std::vector<std::string>& names);
ScalingParams scaling_params_from_csv(std::string_view text);

std::string pca_csv(const PcaResult& p);
std::string gender_means_csv(const std::vector<GenderMeanRow>& rows,
                             const std::vector<std::string>& names);
std::string gender_mix_csv(const GenderMixMatrix& m);
std::string tukey_csv(const std::vector<TukeyHsdRow>& rows);
std::string age_link_matrix_csv(const AgeLinkMatrix& m);
std::string age_diff_hist_csv(const std::vector<std::uint64_t>& hist);
std::string residual_log_csv(const std::vector<double>& residuals);
std::string grid_report_csv(const GridSearchResult& g);

// Model persistence: line-oriented text, versioned header. Save/load is a
// bit-exact round trip.
std::string model_to_text(const LinearModel& m);
LinearModel model_from_text(std::string_view text);

// Propagation checkpoint (lambda, iteration, f and g matrices).
std::string state_to_text(const LabelState& s);
LabelState state_from_text(std::string_view text);

// Quota assignment export: user_id,category,probability,assigned_rank with
// rank starting at 1 in assignment order. Unassigned rows are omitted
// unless include_unassigned, which emits them with empty category and rank
// fields. category_names maps the category index to its output label.
std::string assignments_csv(const Interner& users,
                            const std::vector<NodeId>& row_nodes,
                            const RowMatrix& proba, const PpsAssignment& asg,
                            const std::vector<std::string>& category_names,
                            bool include_unassigned = false);

}  // namespace demograph
