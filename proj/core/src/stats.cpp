#include "demograph/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "demograph/common.hpp"
#include "demograph/special_functions.hpp"

namespace demograph {

PcaResult pca(const RowMatrix& m) {
  if (m.rows < 2) throw DataError("PCA needs at least 2 rows");
  const std::size_t n = m.rows, d = m.cols;
  const std::size_t packed = d * (d + 1) / 2;

  // Per-chunk packed upper-triangular Gram and column sums, folded in chunk
  // order so the covariance is bit-identical for any thread count.
  const std::size_t chunk = 8192;
  const std::size_t num_chunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<double>> grams(num_chunks);
  std::vector<std::vector<double>> sums(num_chunks);
  parallel_chunks(n, chunk, [&](std::size_t b, std::size_t e) {
    const std::size_t c = b / chunk;
    grams[c].assign(packed, 0.0);
    sums[c].assign(d, 0.0);
    for (std::size_t r = b; r < e; ++r) {
      const double* row = m.row(r);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < d; ++i) {
        sums[c][i] += row[i];
        for (std::size_t j = i; j < d; ++j) grams[c][idx++] += row[i] * row[j];
      }
    }
  });
  std::vector<double> gram(packed, 0.0), mu(d, 0.0);
  for (std::size_t c = 0; c < num_chunks; ++c) {
    for (std::size_t i = 0; i < packed; ++i) gram[i] += grams[c][i];
    for (std::size_t i = 0; i < d; ++i) mu[i] += sums[c][i];
  }
  for (std::size_t i = 0; i < d; ++i) mu[i] /= static_cast<double>(n);

  Eigen::MatrixXd cov(d, d);
  {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const double cij =
            (gram[idx++] - static_cast<double>(n) * mu[i] * mu[j]) /
            static_cast<double>(n - 1);
        cov(i, j) = cij;
        cov(j, i) = cij;
      }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success)
    throw NumericError("covariance eigendecomposition failed");

  PcaResult out;
  out.components = RowMatrix(d, d);
  out.eigenvalues.resize(d);
  out.explained_variance_fraction.resize(d);
  double total = 0;
  for (std::size_t k = 0; k < d; ++k) {
    const double ev = std::max(0.0, es.eigenvalues()(static_cast<Eigen::Index>(d - 1 - k)));
    out.eigenvalues[k] = ev;
    total += ev;
  }
  if (total <= 0) throw DataError("PCA input has zero total variance");
  for (std::size_t k = 0; k < d; ++k) {
    out.explained_variance_fraction[k] = out.eigenvalues[k] / total;
    Eigen::VectorXd v = es.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - k));
    std::size_t arg = 0;
    for (std::size_t i = 1; i < d; ++i)
      if (std::abs(v(static_cast<Eigen::Index>(i))) > std::abs(v(static_cast<Eigen::Index>(arg))))
        arg = i;
    if (v(static_cast<Eigen::Index>(arg)) < 0) v = -v;
    for (std::size_t i = 0; i < d; ++i)
      out.components.at(k, i) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

std::vector<GenderMeanRow> gender_group_means(const RowMatrix& m,
                                              const std::vector<int>& gender) {
  if (gender.size() != m.rows)
    throw DataError("gender vector length does not match matrix rows");
  std::size_t counts[2] = {0, 0};
  for (int g : gender)
    if (g == 0 || g == 1) ++counts[g];
  if (counts[0] < 2 || counts[1] < 2)
    throw DataError("need at least 2 users of each gender");

  std::vector<GenderMeanRow> rows(m.cols);
  parallel_for(m.cols, [&](std::size_t c) {
    // Welford accumulation per gender, sequential over rows.
    double mean[2] = {0, 0}, m2[2] = {0, 0};
    std::size_t n[2] = {0, 0};
    for (std::size_t r = 0; r < m.rows; ++r) {
      const int g = gender[r];
      if (g != 0 && g != 1) continue;
      const double x = m.at(r, c);
      ++n[g];
      const double delta = x - mean[g];
      mean[g] += delta / static_cast<double>(n[g]);
      m2[g] += delta * (x - mean[g]);
    }
    GenderMeanRow& out = rows[c];
    out.mean_male = mean[0];
    out.mean_female = mean[1];
    const double v0 = m2[0] / static_cast<double>(n[0] - 1);
    const double v1 = m2[1] / static_cast<double>(n[1] - 1);
    const double se2 = v0 / static_cast<double>(n[0]) + v1 / static_cast<double>(n[1]);
    const double diff = mean[1] - mean[0];
    if (se2 <= 0) {
      out.welch_t = diff == 0 ? 0 : std::numeric_limits<double>::infinity() * (diff > 0 ? 1 : -1);
      out.p_value = diff == 0 ? 1.0 : 0.0;
      return;
    }
    out.welch_t = diff / std::sqrt(se2);
    const double a = v0 / static_cast<double>(n[0]);
    const double b = v1 / static_cast<double>(n[1]);
    const double df = se2 * se2 /
                      (a * a / static_cast<double>(n[0] - 1) +
                       b * b / static_cast<double>(n[1] - 1));
    out.p_value = student_t_two_sided_p(out.welch_t, df);
  });
  return rows;
}

GenderMixMatrix gender_mix(const SocialGraph& g,
                           const std::vector<std::uint8_t>& has_label,
                           const std::vector<DemographicLabel>& labels) {
  GenderMixMatrix mix;
  std::uint64_t labeled[2] = {0, 0};
  for (NodeId x = 0; x < g.num_nodes(); ++x)
    if (has_label[x]) ++labeled[static_cast<int>(labels[x].gender)];
  const std::uint64_t labeled_total = labeled[0] + labeled[1];
  if (labeled_total > 0)
    mix.p_male = static_cast<double>(labeled[0]) / static_cast<double>(labeled_total);

  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (!has_label[x]) continue;
    const auto nbs = g.neighbors(x);
    const auto eids = g.edge_ids(x);
    for (std::size_t i = 0; i < nbs.size(); ++i) {
      const NodeId y = nbs[i];
      if (y <= x || !has_label[y]) continue;
      const EdgeCounters& c = g.counters(eids[i]);
      const int gx = static_cast<int>(labels[x].gender);
      const int gy = static_cast<int>(labels[y].gender);
      mix.calls[gx][gy] += c.calls_ab;  // x < y so ab is the x->y flow
      mix.calls[gy][gx] += c.calls_ba;
    }
  }
  for (int gi = 0; gi < 2; ++gi) {
    const std::uint64_t total = mix.calls[gi][0] + mix.calls[gi][1];
    if (total == 0) continue;
    mix.row_defined[gi] = true;
    mix.p[gi][0] = static_cast<double>(mix.calls[gi][0]) / static_cast<double>(total);
    mix.p[gi][1] = static_cast<double>(mix.calls[gi][1]) / static_cast<double>(total);
  }
  return mix;
}

std::vector<TukeyHsdRow> tukey_hsd(const std::vector<std::vector<double>>& groups,
                                   double fwer) {
  const std::size_t k = groups.size();
  if (k < 2) throw DataError("Tukey HSD needs at least 2 groups");
  std::size_t total_n = 0;
  for (const auto& g : groups) {
    if (g.size() < 2)
      throw DataError("Tukey HSD needs at least 2 observations per group");
    total_n += g.size();
  }

  std::vector<double> means(k, 0.0);
  double ssw = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0;
    for (double x : groups[i]) sum += x;
    means[i] = sum / static_cast<double>(groups[i].size());
    for (double x : groups[i]) ssw += (x - means[i]) * (x - means[i]);
  }
  const double df = static_cast<double>(total_n - k);
  const double mse = ssw / df;
  const double q_crit =
      studentized_range_quantile(1.0 - fwer, static_cast<int>(k), df);

  std::vector<TukeyHsdRow> rows;
  rows.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      TukeyHsdRow r;
      r.group1 = static_cast<int>(i);
      r.group2 = static_cast<int>(j);
      r.meandiff = means[j] - means[i];
      const double margin =
          q_crit * std::sqrt(mse / 2.0 *
                             (1.0 / static_cast<double>(groups[i].size()) +
                              1.0 / static_cast<double>(groups[j].size())));
      r.lower = r.meandiff - margin;
      r.upper = r.meandiff + margin;
      r.reject = r.lower > 0 || r.upper < 0;
      rows.push_back(r);
    }
  return rows;
}

AgeLinkMatrix age_link_matrix(const SocialGraph& g,
                              const std::vector<std::uint8_t>& has_label,
                              const std::vector<DemographicLabel>& labels) {
  AgeLinkMatrix out;
  int lo = 255, hi = -1;
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (!has_label[x]) continue;
    lo = std::min(lo, static_cast<int>(labels[x].age));
    hi = std::max(hi, static_cast<int>(labels[x].age));
  }
  if (hi < 0) return out;  // no labels: empty matrix
  out.min_age = lo;
  out.max_age = hi;
  const int side = out.side();
  out.counts.assign(static_cast<std::size_t>(side) * side, 0);

  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (!has_label[x]) continue;
    const int ax = labels[x].age;
    for (NodeId y : g.neighbors(x)) {
      if (y <= x || !has_label[y]) continue;
      const int ay = labels[y].age;
      ++out.counts[static_cast<std::size_t>(ax - lo) * side + (ay - lo)];
      ++out.counts[static_cast<std::size_t>(ay - lo) * side + (ax - lo)];
    }
  }
  return out;
}

std::vector<std::uint64_t> age_diff_histogram(
    const SocialGraph& g, const std::vector<std::uint8_t>& has_label,
    const std::vector<DemographicLabel>& labels) {
  std::vector<std::uint64_t> hist;
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (!has_label[x]) continue;
    for (NodeId y : g.neighbors(x)) {
      if (y <= x || !has_label[y]) continue;
      const int delta = std::abs(static_cast<int>(labels[x].age) -
                                 static_cast<int>(labels[y].age));
      if (hist.size() <= static_cast<std::size_t>(delta))
        hist.resize(static_cast<std::size_t>(delta) + 1, 0);
      ++hist[delta];
    }
  }
  return hist;
}

}  // namespace demograph
