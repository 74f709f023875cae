#include "demograph/features.hpp"

#include <string>

#include "demograph/common.hpp"

namespace demograph {

const std::array<std::string_view, kNumFeatures>& feature_names() {
  static const std::array<std::string_view, kNumFeatures> names = {
      "calls_in_week_daylight",
      "calls_in_week_night",
      "calls_in_weekend",
      "calls_in_total",
      "calls_out_week_daylight",
      "calls_out_week_night",
      "calls_out_weekend",
      "calls_out_total",
      "calls_all_week_daylight",
      "calls_all_week_night",
      "calls_all_weekend",
      "calls_all_total",
      "call_seconds_in_week_daylight",
      "call_seconds_in_week_night",
      "call_seconds_in_weekend",
      "call_seconds_in_total",
      "call_seconds_out_week_daylight",
      "call_seconds_out_week_night",
      "call_seconds_out_weekend",
      "call_seconds_out_total",
      "call_seconds_all_week_daylight",
      "call_seconds_all_week_night",
      "call_seconds_all_weekend",
      "call_seconds_all_total",
      "sms_in_week_daylight",
      "sms_in_week_night",
      "sms_in_weekend",
      "sms_in_total",
      "sms_out_week_daylight",
      "sms_out_week_night",
      "sms_out_weekend",
      "sms_out_total",
      "sms_all_week_daylight",
      "sms_all_week_night",
      "sms_all_weekend",
      "sms_all_total",
      "contact_days_call_in",
      "contact_days_call_out",
      "contact_days_call_any",
      "contact_days_sms_in",
      "contact_days_sms_out",
      "contact_days_sms_any",
      "degree",
      "in_degree",
      "out_degree",
  };
  return names;
}

Degrees compute_degrees(NodeId user, const SocialGraph& g) {
  Degrees d;
  const auto nbs = g.neighbors(user);
  const auto eids = g.edge_ids(user);
  d.degree = static_cast<std::uint32_t>(nbs.size());
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    const auto sent = g.outbound(user, nbs[i], eids[i]);
    if (sent.calls + sent.sms > 0) ++d.out_degree;
    const auto received = g.outbound(nbs[i], user, eids[i]);
    if (received.calls + received.sms > 0) ++d.in_degree;
  }
  return d;
}

namespace {

// Fills the 12-column block of one family: in/out windows come from the
// per-direction counters, "all" and "total" cells are sums.
template <typename T>
void fill_family(const T (&counts)[2][kNumWindows], double* out) {
  for (int dir = 0; dir < 2; ++dir) {
    double total = 0;
    for (int w = 0; w < kNumWindows; ++w) {
      const double x = static_cast<double>(counts[dir][w]);
      out[dir * 4 + w] = x;
      total += x;
    }
    out[dir * 4 + 3] = total;
  }
  for (int w = 0; w < 4; ++w) out[2 * 4 + w] = out[w] + out[4 + w];
}

}  // namespace

FeatureVector extract_user_features(NodeId user, const Dataset& ds) {
  if (user >= ds.num_users() || !ds.is_client[user])
    throw DataError("feature extraction requested for non-client user id " +
                    std::to_string(user));
  FeatureVector f{};
  const UserActivity& a = ds.activity[user];
  fill_family(a.calls, f.data() + 0);
  fill_family(a.call_seconds, f.data() + 12);
  fill_family(a.sms, f.data() + 24);
  for (int ch = 0; ch < 2; ++ch)
    for (int span = 0; span < 3; ++span)
      f[36 + ch * 3 + span] = static_cast<double>(a.contact_days[ch][span]);
  const Degrees d = compute_degrees(user, ds.graph);
  f[42] = static_cast<double>(d.degree);
  f[43] = static_cast<double>(d.in_degree);
  f[44] = static_cast<double>(d.out_degree);
  return f;
}

RowMatrix extract_features(const Dataset& ds) {
  RowMatrix m(ds.clients.size(), kNumFeatures);
  parallel_for(ds.clients.size(), [&](std::size_t i) {
    const FeatureVector f = extract_user_features(ds.clients[i], ds);
    double* row = m.row(i);
    for (int c = 0; c < kNumFeatures; ++c) row[c] = f[c];
  });
  return m;
}

}  // namespace demograph
