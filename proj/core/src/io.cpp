#include "demograph/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>

#include "demograph/common.hpp"
#include "demograph/features.hpp"

namespace demograph {

void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

std::string format_double(double v) {
  std::string s;
  append_double(s, v);
  return s;
}

double parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DataError("bad numeric value '" + std::string(s) + "'");
  return v;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DataError("bad integer value '" + std::string(s) + "'");
  return v;
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed: " + path);
}

std::string_view strip_stamp(std::string_view text) {
  while (!text.empty() && text.front() == '#') {
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos) return {};
    text.remove_prefix(eol + 1);
  }
  return text;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

KvPairs parse_kv_text(std::string_view text) {
  KvPairs kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw DataError("config line is not key=value: '" + std::string(line) +
                      "'");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view val = trim(line.substr(eq + 1));
    if (key.empty())
      throw DataError("config line has empty key: '" + std::string(line) + "'");
    kv.emplace_back(std::string(key), std::string(val));
  }
  return kv;
}

KvPairs parse_kv_file(const std::string& path) {
  return parse_kv_text(read_text_file(path));
}

const std::string* kv_find(const KvPairs& kv, std::string_view key) {
  const std::string* hit = nullptr;
  for (const auto& [k, v] : kv)
    if (k == key) hit = &v;  // last occurrence wins
  return hit;
}

std::string kv_string(const KvPairs& kv, std::string_view key,
                      std::string_view fallback) {
  const std::string* v = kv_find(kv, key);
  return v ? *v : std::string(fallback);
}

double kv_double(const KvPairs& kv, std::string_view key, double fallback) {
  const std::string* v = kv_find(kv, key);
  return v ? parse_double(*v) : fallback;
}

std::int64_t kv_int(const KvPairs& kv, std::string_view key,
                    std::int64_t fallback) {
  const std::string* v = kv_find(kv, key);
  return v ? parse_int(*v) : fallback;
}

std::vector<double> kv_doubles(const KvPairs& kv, std::string_view key,
                               std::vector<double> fallback) {
  const std::string* v = kv_find(kv, key);
  if (!v) return fallback;
  std::vector<double> out;
  std::string_view rest = *v;
  while (true) {
    const std::size_t comma = rest.find(',');
    out.push_back(parse_double(trim(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::string features_csv(const Interner& users, const std::vector<NodeId>& rows,
                         const RowMatrix& feats) {
  if (feats.rows != rows.size())
    throw DataError("feature matrix rows do not match the row key list");
  std::string out = "user_id";
  for (std::string_view name : feature_names()) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += users.name(rows[r]);
    const double* row = feats.row(r);
    for (std::size_t c = 0; c < feats.cols; ++c) {
      out += ',';
      append_double(out, row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string column_summaries_csv(const std::vector<ColumnSummary>& summaries,
                                 const std::vector<std::string>& names) {
  if (summaries.size() != names.size())
    throw DataError("summary count does not match the name list");
  std::string out =
      "variable,count,mean,std,min,q1,median,q3,max,iqr_over_median\n";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const ColumnSummary& s = summaries[i];
    out += names[i];
    out += ',';
    out += std::to_string(s.count);
    for (double v : {s.mean, s.std_dev, s.min, s.q1, s.median, s.q3, s.max}) {
      out += ',';
      append_double(out, v);
    }
    out += ',';
    if (s.iqr_ratio_defined) append_double(out, s.iqr_ratio);
    out += '\n';
  }
  return out;
}

std::string scaling_params_csv(const ScalingParams& p,
                               const std::vector<std::string>& names) {
  if (p.min.size() != names.size() || p.max.size() != names.size())
    throw DataError("scaling parameter count does not match the name list");
  std::string out = "column,variable,min,max\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += names[i];
    out += ',';
    append_double(out, p.min[i]);
    out += ',';
    append_double(out, p.max[i]);
    out += '\n';
  }
  return out;
}

namespace {

// Splits one CSV line into fields at top-level commas (no quoting in any of
// our formats).
std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void for_each_csv_row(std::string_view text,
                      const std::function<void(std::string_view)>& fn) {
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;  // skip the header row
      continue;
    }
    fn(line);
  }
}

}  // namespace

ScalingParams scaling_params_from_csv(std::string_view text) {
  ScalingParams p;
  for_each_csv_row(strip_stamp(text), [&](std::string_view line) {
    const auto f = split_csv(line);
    if (f.size() != 4) throw DataError("scaling row needs 4 fields");
    p.min.push_back(parse_double(f[2]));
    p.max.push_back(parse_double(f[3]));
  });
  return p;
}

std::string pca_csv(const PcaResult& p) {
  std::string out = "component,eigenvalue,explained_fraction";
  for (std::size_t c = 0; c < p.components.cols; ++c)
    out += ",w" + std::to_string(c);
  out += '\n';
  for (std::size_t r = 0; r < p.components.rows; ++r) {
    out += std::to_string(r);
    out += ',';
    append_double(out, p.eigenvalues[r]);
    out += ',';
    append_double(out, p.explained_variance_fraction[r]);
    const double* row = p.components.row(r);
    for (std::size_t c = 0; c < p.components.cols; ++c) {
      out += ',';
      append_double(out, row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string gender_means_csv(const std::vector<GenderMeanRow>& rows,
                             const std::vector<std::string>& names) {
  if (rows.size() != names.size())
    throw DataError("t-test row count does not match the name list");
  std::string out = "variable,mean_male,mean_female,welch_t,p_value\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += names[i];
    for (double v :
         {rows[i].mean_male, rows[i].mean_female, rows[i].welch_t,
          rows[i].p_value}) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string gender_mix_csv(const GenderMixMatrix& m) {
  static constexpr const char* kName[2] = {"M", "F"};
  std::string out = "caller,callee,calls,probability\n";
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h) {
      out += kName[g];
      out += ',';
      out += kName[h];
      out += ',';
      out += std::to_string(m.calls[g][h]);
      out += ',';
      if (m.row_defined[g]) append_double(out, m.p[g][h]);
      out += '\n';
    }
  out += "# p_male=";
  append_double(out, m.p_male);
  out += '\n';
  return out;
}

std::string tukey_csv(const std::vector<TukeyHsdRow>& rows) {
  std::string out = "group1,group2,meandiff,lower,upper,reject\n";
  for (const TukeyHsdRow& r : rows) {
    out += std::to_string(r.group1);
    out += ',';
    out += std::to_string(r.group2);
    for (double v : {r.meandiff, r.lower, r.upper}) {
      out += ',';
      append_double(out, v);
    }
    out += r.reject ? ",true\n" : ",false\n";
  }
  return out;
}

std::string age_link_matrix_csv(const AgeLinkMatrix& m) {
  std::string out = "age";
  for (int j = 0; j < m.side(); ++j)
    out += ',' + std::to_string(m.min_age + j);
  out += '\n';
  for (int i = 0; i < m.side(); ++i) {
    out += std::to_string(m.min_age + i);
    for (int j = 0; j < m.side(); ++j) {
      out += ',';
      out += std::to_string(m.at(m.min_age + i, m.min_age + j));
    }
    out += '\n';
  }
  return out;
}

std::string age_diff_hist_csv(const std::vector<std::uint64_t>& hist) {
  std::string out = "age_difference,links\n";
  for (std::size_t d = 0; d < hist.size(); ++d) {
    out += std::to_string(d);
    out += ',';
    out += std::to_string(hist[d]);
    out += '\n';
  }
  return out;
}

std::string residual_log_csv(const std::vector<double>& residuals) {
  std::string out = "iteration,residual\n";
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    append_double(out, residuals[i]);
    out += '\n';
  }
  return out;
}

std::string grid_report_csv(const GridSearchResult& g) {
  std::string out = "k,C,val_accuracy,selected\n";
  for (const GridCell& c : g.cells) {
    out += std::to_string(c.k);
    out += ',';
    append_double(out, c.C);
    out += ',';
    append_double(out, c.val_accuracy);
    const bool selected = c.k == g.best.k && c.C == g.best.C;
    out += selected ? ",1\n" : ",0\n";
  }
  return out;
}

namespace {

constexpr std::string_view kModelMagic = "demograph-model 1";
constexpr std::string_view kStateMagic = "demograph-state 1";

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::logreg_l1:
      return "logreg_l1";
    case Algorithm::linear_svm_l1loss:
      return "linear_svm_l1loss";
    case Algorithm::multinomial_logistic:
      return "multinomial_logistic";
  }
  throw DataError("unknown algorithm enum value");
}

Algorithm algorithm_from_name(std::string_view s) {
  if (s == "logreg_l1") return Algorithm::logreg_l1;
  if (s == "linear_svm_l1loss") return Algorithm::linear_svm_l1loss;
  if (s == "multinomial_logistic") return Algorithm::multinomial_logistic;
  throw DataError("unknown algorithm '" + std::string(s) + "'");
}

// Whitespace-token reader over the persistence formats.
class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ >= text_.size()) throw DataError("truncated persistence file");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(std::string_view tok) {
    const std::string_view got = next();
    if (got != tok)
      throw DataError("expected '" + std::string(tok) + "', found '" +
                      std::string(got) + "'");
  }

  double number() { return parse_double(next()); }
  std::int64_t integer() { return parse_int(next()); }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\n' || c == '\r' || c == '\t';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_matrix(std::string& out, const RowMatrix& m) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.row(r);
    for (std::size_t c = 0; c < m.cols; ++c) {
      out += c ? ' ' : '\n';
      append_double(out, row[c]);
    }
  }
  out += '\n';
}

RowMatrix read_matrix(TokenReader& tr, std::size_t rows, std::size_t cols) {
  RowMatrix m(rows, cols);
  for (double& v : m.v) v = tr.number();
  return m;
}

}  // namespace

std::string model_to_text(const LinearModel& m) {
  std::string out(kModelMagic);
  out += "\nalgorithm ";
  out += algorithm_name(m.algorithm);
  out += "\nclasses " + std::to_string(m.n_classes);
  out += "\nsource_cols " + std::to_string(m.source_cols);
  out += "\nfeatures " + std::to_string(m.feature_cols.size());
  for (std::uint32_t c : m.feature_cols) out += ' ' + std::to_string(c);
  out += "\nbias " + std::to_string(m.bias.size());
  for (double b : m.bias) {
    out += ' ';
    append_double(out, b);
  }
  out += "\nweights " + std::to_string(m.weights.size());
  for (double w : m.weights) {
    out += ' ';
    append_double(out, w);
  }
  out += "\nplatt ";
  append_double(out, m.platt_a);
  out += ' ';
  append_double(out, m.platt_b);
  out += '\n';
  return out;
}

LinearModel model_from_text(std::string_view text) {
  TokenReader tr(strip_stamp(text));
  tr.expect("demograph-model");
  tr.expect("1");
  LinearModel m;
  tr.expect("algorithm");
  m.algorithm = algorithm_from_name(tr.next());
  tr.expect("classes");
  m.n_classes = static_cast<int>(tr.integer());
  tr.expect("source_cols");
  m.source_cols = static_cast<std::uint32_t>(tr.integer());
  tr.expect("features");
  const std::int64_t nf = tr.integer();
  if (nf < 0) throw DataError("negative feature count");
  m.feature_cols.resize(static_cast<std::size_t>(nf));
  for (auto& c : m.feature_cols) c = static_cast<std::uint32_t>(tr.integer());
  tr.expect("bias");
  const std::int64_t nb = tr.integer();
  if (nb < 0) throw DataError("negative bias count");
  m.bias.resize(static_cast<std::size_t>(nb));
  for (double& b : m.bias) b = tr.number();
  tr.expect("weights");
  const std::int64_t nw = tr.integer();
  if (nw < 0) throw DataError("negative weight count");
  m.weights.resize(static_cast<std::size_t>(nw));
  for (double& w : m.weights) w = tr.number();
  tr.expect("platt");
  m.platt_a = tr.number();
  m.platt_b = tr.number();
  return m;
}

std::string state_to_text(const LabelState& s) {
  std::string out(kStateMagic);
  out += "\nclasses " + std::to_string(s.n_classes);
  out += "\nlambda ";
  append_double(out, s.lambda);
  out += "\niteration " + std::to_string(s.iteration);
  out += "\nnodes " + std::to_string(s.f.rows);
  out += "\nf";
  append_matrix(out, s.f);
  out += "g";
  append_matrix(out, s.g);
  return out;
}

LabelState state_from_text(std::string_view text) {
  TokenReader tr(strip_stamp(text));
  tr.expect("demograph-state");
  tr.expect("1");
  LabelState s;
  tr.expect("classes");
  s.n_classes = static_cast<int>(tr.integer());
  if (s.n_classes < 2) throw DataError("state needs at least 2 classes");
  tr.expect("lambda");
  s.lambda = tr.number();
  tr.expect("iteration");
  s.iteration = static_cast<int>(tr.integer());
  tr.expect("nodes");
  const std::int64_t nodes = tr.integer();
  if (nodes < 0) throw DataError("negative node count");
  const auto n = static_cast<std::size_t>(nodes);
  const auto k = static_cast<std::size_t>(s.n_classes);
  tr.expect("f");
  s.f = read_matrix(tr, n, k);
  tr.expect("g");
  s.g = read_matrix(tr, n, k);
  s.scratch = RowMatrix(n, k);
  return s;
}

std::string assignments_csv(const Interner& users,
                            const std::vector<NodeId>& row_nodes,
                            const RowMatrix& proba, const PpsAssignment& asg,
                            const std::vector<std::string>& category_names,
                            bool include_unassigned) {
  if (proba.rows != row_nodes.size() || asg.category.size() != proba.rows)
    throw DataError("assignment export inputs disagree on the row count");
  if (category_names.size() != proba.cols)
    throw DataError("category name count does not match the class count");
  // rank[row] = 1-based position in assignment order
  std::vector<std::size_t> rank(proba.rows, 0);
  for (std::size_t i = 0; i < asg.order.size(); ++i)
    rank[asg.order[i]] = i + 1;
  std::string out = "user_id,category,probability,assigned_rank\n";
  for (std::size_t r = 0; r < proba.rows; ++r) {
    const int cat = asg.category[r];
    if (cat < 0 && !include_unassigned) continue;
    out += users.name(row_nodes[r]);
    out += ',';
    if (cat >= 0) {
      out += category_names[static_cast<std::size_t>(cat)];
      out += ',';
      append_double(out, proba.at(r, static_cast<std::size_t>(cat)));
      out += ',' + std::to_string(rank[r]);
    } else {
      out += ',';
      // the most probable category's mass, for triage of the unassigned
      const double* row = proba.row(r);
      append_double(out, *std::max_element(row, row + proba.cols));
      out += ',';
    }
    out += '\n';
  }
  return out;
}

}  // namespace demograph
