#include "demograph/pps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "demograph/common.hpp"

namespace demograph {

QuotaPlan compute_quotas(std::uint64_t population, double q,
                         const std::vector<double>& shares) {
  if (!(q > 0.0) || q > 1.0)
    throw DataError("coverage fraction q must lie in (0, 1]");
  if (shares.empty()) throw DataError("empty target distribution");
  double sum = 0;
  for (double s : shares) {
    if (!(s >= 0)) throw DataError("negative target share");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw DataError("target shares do not sum to 1");

  QuotaPlan plan;
  plan.q = q;
  plan.target_shares = shares;
  plan.total = static_cast<std::uint64_t>(
      std::llround(q * static_cast<double>(population)));
  const std::size_t c = shares.size();
  plan.quota.assign(c, 0);

  // Largest-remainder apportionment: floors first, then one extra seat per
  // category in remainder order (ties toward the lower index).
  std::vector<double> remainder(c);
  std::uint64_t assigned = 0;
  for (std::size_t k = 0; k < c; ++k) {
    const double raw = static_cast<double>(plan.total) * (shares[k] / sum);
    plan.quota[k] = static_cast<std::uint64_t>(raw);
    remainder[k] = raw - static_cast<double>(plan.quota[k]);
    assigned += plan.quota[k];
  }
  std::vector<std::size_t> by_remainder(c);
  std::iota(by_remainder.begin(), by_remainder.end(), 0);
  std::sort(by_remainder.begin(), by_remainder.end(),
            [&](std::size_t a, std::size_t b) {
              if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
              return a < b;
            });
  for (std::size_t i = 0; assigned < plan.total; ++i, ++assigned)
    ++plan.quota[by_remainder[i % c]];
  return plan;
}

PpsAssignment pps_assign(const RowMatrix& proba, const QuotaPlan& plan) {
  const std::size_t n = proba.rows;
  const std::size_t c = proba.cols;
  if (plan.quota.size() != c)
    throw DataError("quota plan width does not match probability matrix");
  if (plan.total > n)
    throw DataError("quota total exceeds the prediction population");

  PpsAssignment out;
  out.category.assign(n, -1);
  out.order.reserve(plan.total);
  if (plan.total == 0) return out;

  // Per-category candidate order: probability descending, row ascending.
  std::vector<std::vector<std::uint32_t>> order(c);
  for (std::size_t k = 0; k < c; ++k) {
    auto& ord = order[k];
    ord.resize(n);
    std::iota(ord.begin(), ord.end(), 0u);
    std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
      const double pa = proba.at(a, k), pb = proba.at(b, k);
      if (pa != pb) return pa > pb;
      return a < b;
    });
  }

  std::vector<std::size_t> cursor(c, 0);
  std::vector<std::uint64_t> left = plan.quota;
  for (std::uint64_t step = 0; step < plan.total; ++step) {
    // The next assignable tuple in global order is the best among the
    // open categories' current tops.
    int best_k = -1;
    std::uint32_t best_row = 0;
    double best_p = 0;
    for (std::size_t k = 0; k < c; ++k) {
      if (left[k] == 0) continue;
      auto& cur = cursor[k];
      while (cur < n && out.category[order[k][cur]] != -1) ++cur;
      if (cur >= n) continue;  // cannot happen while rows remain unassigned
      const std::uint32_t row = order[k][cur];
      const double p = proba.at(row, k);
      const bool better =
          best_k < 0 || p > best_p || (p == best_p && row < best_row);
      if (better) {
        best_k = static_cast<int>(k);
        best_row = row;
        best_p = p;
      }
    }
    if (best_k < 0)
      throw DataError("quota plan infeasible for the given matrix");
    out.category[best_row] = best_k;
    out.order.push_back(best_row);
    --left[static_cast<std::size_t>(best_k)];
  }
  return out;
}

}  // namespace demograph
