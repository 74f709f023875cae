#include "demograph/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "demograph/common.hpp"

namespace demograph {

namespace {

LabelState make_state(const SocialGraph& g, int n_classes, double lambda) {
  if (n_classes < 2) throw DataError("propagation needs at least 2 classes");
  if (n_classes > 16)
    throw DataError("propagation supports at most 16 classes");
  if (lambda < 0 || lambda > 1)
    throw DataError("lambda must lie in [0, 1]");
  LabelState s;
  s.n_classes = n_classes;
  s.lambda = lambda;
  const double u = 1.0 / static_cast<double>(n_classes);
  s.f = RowMatrix(g.num_nodes(), static_cast<std::size_t>(n_classes), u);
  return s;
}

void apply_anchors(LabelState& s, const std::vector<int>& anchor_class) {
  for (std::size_t x = 0; x < anchor_class.size(); ++x) {
    const int a = anchor_class[x];
    if (a == -1) continue;
    if (a < 0 || a >= s.n_classes)
      throw DataError("anchor class out of range: " + std::to_string(a));
    double* row = s.f.row(x);
    std::fill(row, row + s.n_classes, 0.0);
    row[a] = 1.0;
  }
}

}  // namespace

LabelState init_state_pure(const SocialGraph& g,
                           const std::vector<int>& anchor_class, int n_classes,
                           double lambda) {
  if (anchor_class.size() != g.num_nodes())
    throw DataError("anchor vector length does not match node count");
  LabelState s = make_state(g, n_classes, lambda);
  apply_anchors(s, anchor_class);
  s.g = s.f;
  return s;
}

LabelState init_state_combined(const SocialGraph& g,
                               const std::vector<int>& anchor_class,
                               const std::vector<NodeId>& clients,
                               const RowMatrix& proba, int n_classes,
                               double lambda) {
  if (anchor_class.size() != g.num_nodes())
    throw DataError("anchor vector length does not match node count");
  if (proba.rows != clients.size() ||
      proba.cols != static_cast<std::size_t>(n_classes))
    throw DataError("probability matrix shape does not match client list");
  LabelState s = make_state(g, n_classes, lambda);

  for (std::size_t i = 0; i < clients.size(); ++i) {
    const NodeId x = clients[i];
    if (x >= g.num_nodes()) throw DataError("client node outside graph");
    if (anchor_class[x] != -1) continue;  // anchors win below
    const double* src = proba.row(i);
    double sum = 0;
    for (int c = 0; c < n_classes; ++c) {
      if (!(src[c] >= 0) || !std::isfinite(src[c]))
        throw DataError("invalid probability row for node " + std::to_string(x));
      sum += src[c];
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw DataError("probability row does not sum to 1 for node " +
                      std::to_string(x));
    double* dst = s.f.row(x);
    for (int c = 0; c < n_classes; ++c) dst[c] = src[c] / sum;
  }
  apply_anchors(s, anchor_class);
  s.g = s.f;
  return s;
}

EdgeWeights traffic_edge_weights(const SocialGraph& g) {
  EdgeWeights ew;
  ew.w.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const EdgeCounters& c = g.counters(static_cast<std::uint32_t>(e));
    ew.w[e] = static_cast<double>(c.calls_ab) + static_cast<double>(c.calls_ba) +
              static_cast<double>(c.sms_ab) + static_cast<double>(c.sms_ba);
  }
  return ew;
}

double propagate_step(LabelState& s, const SocialGraph& g,
                      const EdgeWeights* ew) {
  const std::size_t n = g.num_nodes();
  const int nc = s.n_classes;
  if (s.g.rows != n) throw DataError("state does not match graph");
  if (s.scratch.rows != n) s.scratch = RowMatrix(n, static_cast<std::size_t>(nc));

  const double lambda = s.lambda;
  const std::size_t chunk = 2048;
  const std::size_t num_chunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<double> chunk_residual(num_chunks, 0.0);

  parallel_chunks(n, chunk, [&](std::size_t b, std::size_t e) {
    double res = 0;
    double acc[16];
    for (std::size_t x = b; x < e; ++x) {
      const auto nbs = g.neighbors(static_cast<NodeId>(x));
      const double* fx = s.f.row(x);
      const double* gx = s.g.row(x);
      double* out = s.scratch.row(x);
      if (nbs.empty()) {
        for (int c = 0; c < nc; ++c) out[c] = fx[c];
      } else {
        for (int c = 0; c < nc; ++c) acc[c] = 0;
        double wsum = 0;
        if (ew) {
          const auto eids = g.edge_ids(static_cast<NodeId>(x));
          for (std::size_t i = 0; i < nbs.size(); ++i) {
            const double w = ew->w[eids[i]];
            const double* gy = s.g.row(nbs[i]);
            for (int c = 0; c < nc; ++c) acc[c] += w * gy[c];
            wsum += w;
          }
        } else {
          for (const NodeId y : nbs) {
            const double* gy = s.g.row(y);
            for (int c = 0; c < nc; ++c) acc[c] += gy[c];
          }
          wsum = static_cast<double>(nbs.size());
        }
        if (wsum <= 0) {
          for (int c = 0; c < nc; ++c) out[c] = fx[c];
        } else {
          for (int c = 0; c < nc; ++c)
            out[c] = (1.0 - lambda) * fx[c] + lambda * acc[c] / wsum;
        }
      }
      double sum = 0;
      for (int c = 0; c < nc; ++c) {
        sum += out[c];
        res = std::max(res, std::abs(out[c] - gx[c]));
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw NumericError("propagation row drifted off the simplex at node " +
                           std::to_string(x));
    }
    chunk_residual[b / chunk] = res;
  });

  std::swap(s.g, s.scratch);
  ++s.iteration;
  double residual = 0;
  for (double r : chunk_residual) residual = std::max(residual, r);
  return residual;
}

std::vector<double> propagate(LabelState& s, const SocialGraph& g, int m,
                              double early_stop, const EdgeWeights* ew) {
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(std::max(0, m)));
  for (int t = 0; t < m; ++t) {
    const double r = propagate_step(s, g, ew);
    residuals.push_back(r);
    if (r < early_stop) break;
  }
  return residuals;
}

std::vector<int> argmax_predict(const LabelState& s) {
  std::vector<int> out(s.g.rows, 0);
  for (std::size_t x = 0; x < s.g.rows; ++x) {
    const double* row = s.g.row(x);
    int best = 0;
    for (int c = 1; c < s.n_classes; ++c)
      if (row[c] > row[best]) best = c;
    out[x] = best;
  }
  return out;
}

}  // namespace demograph
