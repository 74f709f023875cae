#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "demograph/dataset.hpp"
#include "demograph/matrix.hpp"

namespace demograph {

// The 45 behavioral variables per operator client. Column layout, with
// directions {in, out, all} and windows {week_daylight, week_night,
// weekend, total}:
//   [0,12)   calls          col = 0  + dir*4 + window
//   [12,24)  call_seconds   col = 12 + dir*4 + window
//   [24,36)  sms            col = 24 + dir*4 + window
//   [36,42)  contact_days   col = 36 + channel*3 + span, channel {call,sms},
//                           span {in, out, any}
//   42 degree, 43 in_degree, 44 out_degree
inline constexpr int kNumFeatures = 45;

// Canonical column names, index-aligned with the layout above.
const std::array<std::string_view, kNumFeatures>& feature_names();

using FeatureVector = std::array<double, kNumFeatures>;

struct Degrees {
  std::uint32_t degree = 0;      // distinct counterparties, either direction
  std::uint32_t in_degree = 0;   // distinct counterparties with inbound flow
  std::uint32_t out_degree = 0;  // distinct counterparties contacted
};

Degrees compute_degrees(NodeId user, const SocialGraph& g);

// All 45 variables for one operator client. Throws DataError for a user
// outside N_O: such users have no feature row by construction.
FeatureVector extract_user_features(NodeId user, const Dataset& ds);

// Feature rows for every client, row i belonging to ds.clients[i].
// Row-parallel; output is identical for any thread count.
RowMatrix extract_features(const Dataset& ds);

}  // namespace demograph
