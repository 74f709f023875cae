#include "demograph/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "demograph/common.hpp"
#include "demograph/records.hpp"
#include "demograph/rng.hpp"

namespace demograph {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log1pexp(double t) {
  if (t > 35) return t;
  if (t > 0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

std::vector<int> distinct_labels(const std::vector<std::uint32_t>& rows,
                                 const std::vector<int>& y) {
  std::vector<int> uniq;
  for (std::uint32_t r : rows) uniq.push_back(y[r]);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  return uniq;
}

}  // namespace

std::vector<double> anova_f_scores(const RowMatrix& m,
                                   const std::vector<std::uint32_t>& rows,
                                   const std::vector<int>& y) {
  if (y.size() != m.rows)
    throw DataError("label vector length does not match matrix rows");
  const std::vector<int> uniq = distinct_labels(rows, y);
  const std::size_t g_count = uniq.size();
  if (g_count < 2) throw DataError("F-scores need at least 2 label groups");
  auto group_of = [&](int label) {
    return static_cast<std::size_t>(
        std::lower_bound(uniq.begin(), uniq.end(), label) - uniq.begin());
  };
  std::vector<std::size_t> row_group(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) row_group[i] = group_of(y[rows[i]]);

  const std::size_t n = rows.size();
  std::vector<double> scores(m.cols, 0.0);
  parallel_for(m.cols, [&](std::size_t c) {
    std::vector<double> sum(g_count, 0.0);
    std::vector<std::size_t> cnt(g_count, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[row_group[i]] += m.at(rows[i], c);
      ++cnt[row_group[i]];
    }
    double grand = 0;
    for (std::size_t g = 0; g < g_count; ++g) grand += sum[g];
    grand /= static_cast<double>(n);
    std::vector<double> mean(g_count, 0.0);
    double ssb = 0;
    for (std::size_t g = 0; g < g_count; ++g) {
      mean[g] = sum[g] / static_cast<double>(cnt[g]);
      ssb += static_cast<double>(cnt[g]) * (mean[g] - grand) * (mean[g] - grand);
    }
    double ssw = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = m.at(rows[i], c) - mean[row_group[i]];
      ssw += d * d;
    }
    if (ssw <= 0 || n <= g_count) {
      scores[c] = ssb > 0 ? kInf : 0.0;
    } else {
      scores[c] = (ssb / static_cast<double>(g_count - 1)) /
                  (ssw / static_cast<double>(n - g_count));
    }
  });
  return scores;
}

std::vector<std::uint32_t> select_top_k_features(
    const RowMatrix& m, const std::vector<std::uint32_t>& rows,
    const std::vector<int>& y, int k) {
  if (k <= 0) throw DataError("feature count k must be positive");
  if (static_cast<std::size_t>(k) > m.cols)
    throw DataError("feature count k exceeds available columns");
  const std::vector<double> scores = anova_f_scores(m, rows, y);
  std::vector<std::uint32_t> order(m.cols);
  for (std::uint32_t i = 0; i < m.cols; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  order.resize(static_cast<std::size_t>(k));
  std::sort(order.begin(), order.end());
  return order;
}

RowMatrix gather(const RowMatrix& m, const std::vector<std::uint32_t>& rows,
                 const std::vector<std::uint32_t>& cols) {
  RowMatrix out(rows.size(), cols.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double* src = m.row(rows[i]);
    double* dst = out.row(i);
    for (std::size_t j = 0; j < cols.size(); ++j) dst[j] = src[cols[j]];
  });
  return out;
}

double logistic_smooth_loss(const RowMatrix& Xk, const std::vector<int>& y,
                            const std::vector<double>& params, double C,
                            std::vector<double>* grad) {
  const std::size_t n = Xk.rows, k = Xk.cols;
  if (params.size() != k + 1)
    throw DataError("logistic parameter vector has wrong length");
  if (y.size() != n) throw DataError("label count mismatch");

  const std::size_t chunk = 4096;
  const std::size_t num_chunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<double> losses(num_chunks, 0.0);
  std::vector<std::vector<double>> grads;
  if (grad) grads.assign(num_chunks, {});
  parallel_chunks(n, chunk, [&](std::size_t b, std::size_t e) {
    const std::size_t ci = b / chunk;
    double loss = 0;
    std::vector<double>* gp = nullptr;
    if (grad) {
      grads[ci].assign(k + 1, 0.0);
      gp = &grads[ci];
    }
    for (std::size_t r = b; r < e; ++r) {
      const double* row = Xk.row(r);
      double z = params[k];
      for (std::size_t j = 0; j < k; ++j) z += params[j] * row[j];
      const double t = -static_cast<double>(y[r]) * z;
      loss += log1pexp(t);
      if (gp) {
        const double s = -static_cast<double>(y[r]) * sigmoid(t);
        for (std::size_t j = 0; j < k; ++j) (*gp)[j] += s * row[j];
        (*gp)[k] += s;
      }
    }
    losses[ci] = loss;
  });

  double total = 0;
  for (double l : losses) total += l;
  if (grad) {
    grad->assign(k + 1, 0.0);
    for (const auto& g : grads)
      for (std::size_t j = 0; j <= k; ++j) (*grad)[j] += g[j];
    for (double& gj : *grad) gj *= C;
  }
  return C * total;
}

double multinomial_smooth_loss(const RowMatrix& Xk, const std::vector<int>& y,
                               int n_classes, const std::vector<double>& params,
                               double C, std::vector<double>* grad) {
  const std::size_t n = Xk.rows, k = Xk.cols;
  const std::size_t nc = static_cast<std::size_t>(n_classes);
  if (params.size() != nc * k + nc)
    throw DataError("multinomial parameter vector has wrong length");
  if (y.size() != n) throw DataError("label count mismatch");

  const std::size_t chunk = 4096;
  const std::size_t num_chunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<double> losses(num_chunks, 0.0);
  std::vector<std::vector<double>> grads;
  if (grad) grads.assign(num_chunks, {});
  parallel_chunks(n, chunk, [&](std::size_t b, std::size_t e) {
    const std::size_t ci = b / chunk;
    double loss = 0;
    std::vector<double>* gp = nullptr;
    if (grad) {
      grads[ci].assign(nc * k + nc, 0.0);
      gp = &grads[ci];
    }
    std::vector<double> z(nc);
    for (std::size_t r = b; r < e; ++r) {
      const double* row = Xk.row(r);
      for (std::size_t c = 0; c < nc; ++c) {
        double zc = params[nc * k + c];
        const double* wc = params.data() + c * k;
        for (std::size_t j = 0; j < k; ++j) zc += wc[j] * row[j];
        z[c] = zc;
      }
      const double zmax = *std::max_element(z.begin(), z.end());
      double sum = 0;
      for (std::size_t c = 0; c < nc; ++c) sum += std::exp(z[c] - zmax);
      const double lse = zmax + std::log(sum);
      loss += lse - z[static_cast<std::size_t>(y[r])];
      if (gp) {
        for (std::size_t c = 0; c < nc; ++c) {
          double gc = std::exp(z[c] - lse);
          if (c == static_cast<std::size_t>(y[r])) gc -= 1.0;
          double* gw = gp->data() + c * k;
          for (std::size_t j = 0; j < k; ++j) gw[j] += gc * row[j];
          (*gp)[nc * k + c] += gc;
        }
      }
    }
    losses[ci] = loss;
  });

  double total = 0;
  for (double l : losses) total += l;
  if (grad) {
    grad->assign(nc * k + nc, 0.0);
    for (const auto& g : grads)
      for (std::size_t j = 0; j < g.size(); ++j) (*grad)[j] += g[j];
    for (double& gj : *grad) gj *= C;
  }
  return C * total;
}

namespace {

using SmoothFn = std::function<double(const std::vector<double>&, std::vector<double>*)>;

double l1_prefix_norm(const std::vector<double>& p, std::size_t n_pen) {
  double s = 0;
  for (std::size_t i = 0; i < n_pen; ++i) s += std::abs(p[i]);
  return s;
}

struct ProxRun {
  std::vector<double> params;
  std::vector<double> trace;
  bool converged = false;
};

// Monotone accelerated proximal gradient: the FISTA update with the
// objective-guarded iterate choice, so the logged objective never increases.
// The first n_penalized coordinates carry the L1 term (soft-threshold prox),
// the rest (biases) take plain gradient steps.
ProxRun l1_prox_minimize(std::size_t n_params, std::size_t n_penalized,
                         const SmoothFn& smooth, const TrainOptions& opt) {
  ProxRun run;
  std::vector<double> x(n_params, 0.0), x_prev(n_params, 0.0);
  std::vector<double> v = x, gv(n_params), z(n_params);
  double obj_x = smooth(x, nullptr) + 0.0;
  double t = 1.0;
  double eta = 1.0;
  bool prev_epoch_was_restart = false;

  for (int epoch = 0; epoch < opt.max_epochs; ++epoch) {
    const double fv = smooth(v, &gv);
    double fz = 0;
    for (int bt = 0; bt < 64; ++bt) {
      for (std::size_t i = 0; i < n_params; ++i) {
        const double step = v[i] - eta * gv[i];
        if (i < n_penalized) {
          const double mag = std::abs(step) - eta;
          z[i] = mag > 0 ? (step > 0 ? mag : -mag) : 0.0;
        } else {
          z[i] = step;
        }
      }
      fz = smooth(z, nullptr);
      double lin = 0, sq = 0;
      for (std::size_t i = 0; i < n_params; ++i) {
        const double d = z[i] - v[i];
        lin += gv[i] * d;
        sq += d * d;
      }
      const double quad = fv + lin + sq / (2.0 * eta);
      if (fz <= quad + 1e-12 * std::abs(quad)) break;
      eta *= 0.5;
    }
    const double obj_z = fz + l1_prefix_norm(z, n_penalized);

    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    if (obj_z <= obj_x) {
      const double drop = obj_x - obj_z;
      x_prev = x;
      x = z;
      // Extrapolate from the accepted point.
      for (std::size_t i = 0; i < n_params; ++i)
        v[i] = x[i] + ((t - 1.0) / t_next) * (x[i] - x_prev[i]);
      obj_x = obj_z;
      run.trace.push_back(obj_x);
      t = t_next;
      prev_epoch_was_restart = false;
      eta *= 1.1;
      if (drop <= opt.tol * std::max(1.0, std::abs(obj_x))) {
        run.converged = true;
        break;
      }
    } else {
      // The accelerated candidate overshot. Restart momentum at x; the next
      // epoch is then a plain proximal step from x, and if even that fails
      // to descend we are at a stationary point.
      run.trace.push_back(obj_x);
      if (prev_epoch_was_restart) {
        run.converged = true;
        break;
      }
      v = x;
      t = 1.0;
      prev_epoch_was_restart = true;
    }
  }
  run.params = std::move(x);
  return run;
}

std::vector<int> gather_labels(const std::vector<std::uint32_t>& rows,
                               const std::vector<int>& y) {
  std::vector<int> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = y[rows[i]];
  return out;
}

void require_binary(const std::vector<std::uint32_t>& rows,
                    const std::vector<int>& y) {
  bool pos = false, neg = false;
  for (std::uint32_t r : rows) {
    if (y[r] > 0) pos = true;
    if (y[r] < 0) neg = true;
  }
  if (!pos || !neg)
    throw DataError("binary training needs both classes present");
}

// Logistic calibration p = sigmoid(a * margin + b) fit on training margins
// by damped Newton, with the prior-smoothed targets of Platt's method.
void platt_fit(const std::vector<double>& margins, const std::vector<int>& y,
               double* a_out, double* b_out) {
  const std::size_t n = margins.size();
  std::size_t n_pos = 0;
  for (int yi : y)
    if (yi > 0) ++n_pos;
  const std::size_t n_neg = n - n_pos;
  const double t_pos = (static_cast<double>(n_pos) + 1.0) /
                       (static_cast<double>(n_pos) + 2.0);
  const double t_neg = 1.0 / (static_cast<double>(n_neg) + 2.0);

  double a = 0.0;
  double b = std::log((static_cast<double>(n_pos) + 1.0) /
                      (static_cast<double>(n_neg) + 1.0));
  auto objective = [&](double aa, double bb) {
    double obj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = aa * margins[i] + bb;
      const double ti = y[i] > 0 ? t_pos : t_neg;
      obj += ti * log1pexp(-zi) + (1.0 - ti) * log1pexp(zi);
    }
    return obj;
  };
  double obj = objective(a, b);
  for (int it = 0; it < 100; ++it) {
    double ga = 0, gb = 0, haa = 1e-12, hab = 0, hbb = 1e-12;
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = a * margins[i] + b;
      const double pi = sigmoid(zi);
      const double ti = y[i] > 0 ? t_pos : t_neg;
      const double d = pi - ti;
      const double wgt = std::max(pi * (1.0 - pi), 1e-12);
      ga += d * margins[i];
      gb += d;
      haa += wgt * margins[i] * margins[i];
      hab += wgt * margins[i];
      hbb += wgt;
    }
    const double det = haa * hbb - hab * hab;
    if (det <= 0) break;
    double da = -(hbb * ga - hab * gb) / det;
    double db = -(haa * gb - hab * ga) / det;
    double step = 1.0;
    double next = objective(a + da, b + db);
    while (next > obj && step > 1e-10) {
      step *= 0.5;
      next = objective(a + step * da, b + step * db);
    }
    if (next > obj) break;
    a += step * da;
    b += step * db;
    const double drop = obj - next;
    obj = next;
    if (drop <= 1e-12 * std::max(1.0, std::abs(obj))) break;
  }
  // Calibration must stay monotone in the margin for downstream ranking.
  *a_out = std::max(a, 1e-6);
  *b_out = b;
}

}  // namespace

TrainResult train_logreg_l1(const RowMatrix& m,
                            const std::vector<std::uint32_t>& rows,
                            const std::vector<int>& y,
                            const std::vector<std::uint32_t>& cols, double C,
                            const TrainOptions& opt) {
  require_binary(rows, y);
  const RowMatrix Xk = gather(m, rows, cols);
  const std::vector<int> yk = gather_labels(rows, y);
  const std::size_t k = cols.size();
  auto f = [&](const std::vector<double>& p, std::vector<double>* g) {
    return logistic_smooth_loss(Xk, yk, p, C, g);
  };
  ProxRun run = l1_prox_minimize(k + 1, k, f, opt);

  TrainResult out;
  out.model.algorithm = Algorithm::logreg_l1;
  out.model.n_classes = 2;
  out.model.source_cols = static_cast<std::uint32_t>(m.cols);
  out.model.feature_cols = cols;
  out.model.weights.assign(run.params.begin(), run.params.begin() + k);
  out.model.bias = {run.params[k]};
  out.objective_trace = std::move(run.trace);
  out.converged = run.converged;
  return out;
}

TrainResult train_multinomial_logistic(const RowMatrix& m,
                                       const std::vector<std::uint32_t>& rows,
                                       const std::vector<int>& y,
                                       const std::vector<std::uint32_t>& cols,
                                       double C, const TrainOptions& opt) {
  if (distinct_labels(rows, y).size() < 2)
    throw DataError("multinomial training needs at least 2 classes present");
  const int nc = AgeGroups::kCount;
  const RowMatrix Xk = gather(m, rows, cols);
  const std::vector<int> yk = gather_labels(rows, y);
  for (int yi : yk)
    if (yi < 0 || yi >= nc)
      throw DataError("age-group label out of range: " + std::to_string(yi));
  const std::size_t k = cols.size();
  auto f = [&](const std::vector<double>& p, std::vector<double>* g) {
    return multinomial_smooth_loss(Xk, yk, nc, p, C, g);
  };
  ProxRun run = l1_prox_minimize(static_cast<std::size_t>(nc) * k + nc,
                                 static_cast<std::size_t>(nc) * k, f, opt);

  TrainResult out;
  out.model.algorithm = Algorithm::multinomial_logistic;
  out.model.n_classes = nc;
  out.model.source_cols = static_cast<std::uint32_t>(m.cols);
  out.model.feature_cols = cols;
  out.model.weights.assign(run.params.begin(),
                           run.params.begin() + static_cast<std::size_t>(nc) * k);
  out.model.bias.assign(run.params.begin() + static_cast<std::size_t>(nc) * k,
                        run.params.end());
  out.objective_trace = std::move(run.trace);
  out.converged = run.converged;
  return out;
}

TrainResult train_linear_svm(const RowMatrix& m,
                             const std::vector<std::uint32_t>& rows,
                             const std::vector<int>& y,
                             const std::vector<std::uint32_t>& cols, double C,
                             const TrainOptions& opt) {
  require_binary(rows, y);
  const std::size_t n = rows.size();
  const std::size_t k = cols.size();

  // Augmented representation: a constant 1 coordinate carries the bias and
  // is penalized with the rest of w, which keeps the dual box-constrained.
  RowMatrix Xa(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = m.row(rows[i]);
    double* dst = Xa.row(i);
    for (std::size_t j = 0; j < k; ++j) dst[j] = src[cols[j]];
    dst[k] = 1.0;
  }
  const std::vector<int> yk = gather_labels(rows, y);

  std::vector<double> qii(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = Xa.row(i);
    double q = 0;
    for (std::size_t j = 0; j <= k; ++j) q += xi[j] * xi[j];
    qii[i] = q;
  }

  std::vector<double> w(k + 1, 0.0), alpha(n, 0.0);
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  Rng rng(opt.seed, 0x73766d70u);  // svm permutation stream

  TrainResult out;
  auto dual_value = [&] {
    double sum_a = 0, wnorm = 0;
    for (double ai : alpha) sum_a += ai;
    for (double wj : w) wnorm += wj * wj;
    return sum_a - 0.5 * wnorm;
  };
  double prev = -dual_value();  // zero at the start
  out.objective_trace.push_back(prev);

  for (int epoch = 0; epoch < opt.max_epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.uniform_int(i)]);
    double max_pg = 0;
    for (std::uint32_t pi : perm) {
      const double* xi = Xa.row(pi);
      double zi = 0;
      for (std::size_t j = 0; j <= k; ++j) zi += w[j] * xi[j];
      const double g = static_cast<double>(yk[pi]) * zi - 1.0;
      double pg = g;
      if (alpha[pi] <= 0)
        pg = std::min(g, 0.0);
      else if (alpha[pi] >= C)
        pg = std::max(g, 0.0);
      max_pg = std::max(max_pg, std::abs(pg));
      if (std::abs(pg) > 1e-14) {
        const double a_new =
            std::min(std::max(alpha[pi] - g / qii[pi], 0.0), C);
        const double delta = (a_new - alpha[pi]) * static_cast<double>(yk[pi]);
        if (delta != 0)
          for (std::size_t j = 0; j <= k; ++j) w[j] += delta * xi[j];
        alpha[pi] = a_new;
      }
    }
    const double cur = -dual_value();
    out.objective_trace.push_back(cur);
    const double drop = prev - cur;
    prev = cur;
    if (max_pg < 1e-9 || drop <= opt.tol * std::max(1.0, std::abs(cur))) {
      out.converged = true;
      break;
    }
  }

  out.model.algorithm = Algorithm::linear_svm_l1loss;
  out.model.n_classes = 2;
  out.model.source_cols = static_cast<std::uint32_t>(m.cols);
  out.model.feature_cols = cols;
  out.model.weights.assign(w.begin(), w.begin() + k);
  out.model.bias = {w[k]};

  std::vector<double> margins(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = Xa.row(i);
    double zi = 0;
    for (std::size_t j = 0; j <= k; ++j) zi += w[j] * xi[j];
    margins[i] = zi;
  }
  platt_fit(margins, yk, &out.model.platt_a, &out.model.platt_b);
  return out;
}

RowMatrix predict_proba(const LinearModel& model, const RowMatrix& m) {
  if (m.cols != model.source_cols)
    throw DataError("matrix width does not match the model's training width");
  const std::size_t k = model.feature_cols.size();
  RowMatrix out(m.rows, static_cast<std::size_t>(model.n_classes));

  if (model.n_classes == 2) {
    parallel_for(m.rows, [&](std::size_t r) {
      const double* row = m.row(r);
      double z = model.bias[0];
      for (std::size_t j = 0; j < k; ++j)
        z += model.weights[j] * row[model.feature_cols[j]];
      const double p =
          model.algorithm == Algorithm::linear_svm_l1loss
              ? sigmoid(model.platt_a * z + model.platt_b)
              : sigmoid(z);
      out.at(r, 0) = 1.0 - p;  // male
      out.at(r, 1) = p;        // female, the +1 class
    });
    return out;
  }

  const std::size_t nc = static_cast<std::size_t>(model.n_classes);
  parallel_for(m.rows, [&](std::size_t r) {
    const double* row = m.row(r);
    double z[16];
    for (std::size_t c = 0; c < nc; ++c) {
      double zc = model.bias[c];
      const double* wc = model.weights.data() + c * k;
      for (std::size_t j = 0; j < k; ++j)
        zc += wc[j] * row[model.feature_cols[j]];
      z[c] = zc;
    }
    double zmax = z[0];
    for (std::size_t c = 1; c < nc; ++c) zmax = std::max(zmax, z[c]);
    double sum = 0;
    for (std::size_t c = 0; c < nc; ++c) {
      z[c] = std::exp(z[c] - zmax);
      sum += z[c];
    }
    for (std::size_t c = 0; c < nc; ++c) out.at(r, c) = z[c] / sum;
  });
  return out;
}

namespace {

double subset_accuracy(const LinearModel& model, const RowMatrix& m,
                       const std::vector<std::uint32_t>& rows,
                       const std::vector<int>& y) {
  const std::size_t k = model.feature_cols.size();
  std::size_t correct = 0;
  for (std::uint32_t r : rows) {
    const double* row = m.row(r);
    int pred;
    if (model.n_classes == 2) {
      double z = model.bias[0];
      for (std::size_t j = 0; j < k; ++j)
        z += model.weights[j] * row[model.feature_cols[j]];
      if (model.algorithm == Algorithm::linear_svm_l1loss)
        z = model.platt_a * z + model.platt_b;
      pred = z > 0 ? 1 : 0;
      if ((y[r] > 0 ? 1 : 0) == pred) ++correct;
    } else {
      double best = -kInf;
      pred = 0;
      for (int c = 0; c < model.n_classes; ++c) {
        double zc = model.bias[c];
        const double* wc = model.weights.data() + static_cast<std::size_t>(c) * k;
        for (std::size_t j = 0; j < k; ++j)
          zc += wc[j] * row[model.feature_cols[j]];
        if (zc > best) {
          best = zc;
          pred = c;
        }
      }
      if (y[r] == pred) ++correct;
    }
  }
  return rows.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace

GridSearchResult grid_search(const RowMatrix& m, const std::vector<int>& y,
                             Algorithm algo, const std::vector<double>& Cs,
                             const std::vector<int>& ks,
                             const std::vector<std::uint32_t>& train_rows,
                             const std::vector<std::uint32_t>& val_rows,
                             const TrainOptions& opt) {
  if (Cs.empty() || ks.empty()) throw DataError("empty hyperparameter grid");
  if (val_rows.empty()) throw DataError("empty validation split");

  GridSearchResult result;
  bool have_best = false;
  for (int k_listed : ks) {
    const int k_eff = std::min<int>(k_listed, static_cast<int>(m.cols));
    const std::vector<std::uint32_t> cols =
        select_top_k_features(m, train_rows, y, k_eff);
    for (double C : Cs) {
      TrainResult run;
      switch (algo) {
        case Algorithm::logreg_l1:
          run = train_logreg_l1(m, train_rows, y, cols, C, opt);
          break;
        case Algorithm::linear_svm_l1loss:
          run = train_linear_svm(m, train_rows, y, cols, C, opt);
          break;
        case Algorithm::multinomial_logistic:
          run = train_multinomial_logistic(m, train_rows, y, cols, C, opt);
          break;
      }
      GridCell cell{C, k_listed, subset_accuracy(run.model, m, val_rows, y)};
      result.cells.push_back(cell);
      const bool better =
          !have_best || cell.val_accuracy > result.best.val_accuracy ||
          (cell.val_accuracy == result.best.val_accuracy &&
           (cell.k < result.best.k ||
            (cell.k == result.best.k && cell.C < result.best.C)));
      if (better) {
        result.best = cell;
        result.best_run = std::move(run);
        have_best = true;
      }
    }
  }
  return result;
}

}  // namespace demograph
