#pragma once

#include <cstdint>
#include <vector>

#include "demograph/matrix.hpp"

namespace demograph {

// Per-category assignment quotas for a coverage fraction q of a prediction
// population. Quotas sum to total exactly.
struct QuotaPlan {
  double q = 1.0;
  std::uint64_t total = 0;            // N = round(q * population)
  std::vector<std::uint64_t> quota;   // N_k per category
  std::vector<double> target_shares;  // the distribution the quotas realize
};

// Largest-remainder apportionment of round(q * population) across the
// target shares; remainder ties favor the lower category index. Throws
// DataError when q is outside (0, 1] or the shares are not a distribution.
QuotaPlan compute_quotas(std::uint64_t population, double q,
                         const std::vector<double>& shares);

struct PpsAssignment {
  // Category per probability-matrix row, -1 where unassigned.
  std::vector<int> category;
  // Rows in assignment order (rank 0 = most confident assigned tuple).
  std::vector<std::uint32_t> order;
};

// Greedy confidence-ordered collapse: walk the (row, category, probability)
// tuples in order of probability descending (ties: row index ascending,
// then category ascending); a tuple claims its row iff the row is still
// unassigned and the category is below quota; stop once all quotas fill.
// Implemented as a per-category merge, which visits assignable tuples in
// exactly that global order without materializing the full tuple list.
// Throws DataError when plan.total exceeds the row count or the plan width
// differs from the matrix.
PpsAssignment pps_assign(const RowMatrix& proba, const QuotaPlan& plan);

}  // namespace demograph
