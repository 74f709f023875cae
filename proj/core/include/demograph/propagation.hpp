#pragma once

#include <cstdint>
#include <vector>

#include "demograph/graph.hpp"
#include "demograph/matrix.hpp"

namespace demograph {

// Reaction-diffusion label state over the full graph: f holds the initial
// per-node category distributions (the "reaction" anchor), g the current
// ones. Rows are probability vectors throughout.
struct LabelState {
  int n_classes = 0;
  double lambda = 0.5;
  int iteration = 0;
  RowMatrix f;
  RowMatrix g;
  RowMatrix scratch;  // double buffer for the synchronous update
};

// Anchored initialization: anchor_class[x] in [0, n_classes) pins node x to
// a one-hot row; -1 leaves it uniform 1/C. Throws DataError for classes
// outside [-1, n_classes).
LabelState init_state_pure(const SocialGraph& g,
                           const std::vector<int>& anchor_class, int n_classes,
                           double lambda);

// Like init_state_pure, but non-anchored client nodes start from their
// model probability row (proba row i belongs to node clients[i]); nodes
// outside the client set stay uniform. Rows are validated (non-negative,
// sum within 1e-6 of 1) and renormalized exactly.
LabelState init_state_combined(const SocialGraph& g,
                               const std::vector<int>& anchor_class,
                               const std::vector<NodeId>& clients,
                               const RowMatrix& proba, int n_classes,
                               double lambda);

// Optional per-edge weights for the generalized neighbor average.
struct EdgeWeights {
  std::vector<double> w;  // indexed by edge id
};

// Total traffic per edge (calls + SMS, both directions), the symmetrized
// directed-counter weighting.
EdgeWeights traffic_edge_weights(const SocialGraph& g);

// One synchronous step: g_x <- (1 - lambda) * f_x + lambda * avg of the
// neighbors' previous g rows (weighted when ew is given). Isolated nodes
// keep g_x = f_x. All reads see the previous buffer, so the result does not
// depend on node order; neighbor sums run in ascending-neighbor order.
// Returns the sup-norm residual max |g_t - g_{t-1}| and checks that every
// row still sums to 1 within 1e-9 (NumericError otherwise).
double propagate_step(LabelState& s, const SocialGraph& g,
                      const EdgeWeights* ew = nullptr);

// Runs up to m steps, stopping early when the residual drops below
// early_stop. Returns the per-step residuals (size = steps actually run).
std::vector<double> propagate(LabelState& s, const SocialGraph& g, int m,
                              double early_stop = 1e-9,
                              const EdgeWeights* ew = nullptr);

// Highest-probability category per node, ties to the lowest index.
std::vector<int> argmax_predict(const LabelState& s);

}  // namespace demograph
