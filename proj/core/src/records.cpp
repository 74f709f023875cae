#include "demograph/records.hpp"

#include <array>
#include <charconv>

#include "demograph/civil.hpp"

namespace demograph {

const char* AgeGroups::name(int group) {
  static constexpr std::array<const char*, 4> kNames = {"10-25", "25-35",
                                                        "35-50", "50+"};
  return kNames[static_cast<std::size_t>(group)];
}

namespace {

// Splits line into exactly n comma fields. Returns false on any other count.
template <std::size_t N>
bool split_fields(std::string_view line, std::array<std::string_view, N>& out) {
  std::size_t field = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (field >= N) return false;
      out[field++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  return field == N;
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "IN") return Direction::incoming;
  if (s == "OUT") return Direction::outgoing;
  return std::nullopt;
}

bool parse_u32(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

void bump(RejectCounters* rc, std::uint64_t RejectCounters::* field) {
  if (rc) ++(rc->*field);
}

}  // namespace

std::optional<CdrRecord> parse_cdr_line(std::string_view line,
                                        RejectCounters* rc) {
  std::array<std::string_view, 6> f;
  if (!split_fields(line, f)) {
    bump(rc, &RejectCounters::bad_field_count);
    return std::nullopt;
  }
  if (f[0].empty() || f[1].empty()) {
    bump(rc, &RejectCounters::empty_id);
    return std::nullopt;
  }
  if (f[0] == f[1]) {
    bump(rc, &RejectCounters::self_loop);
    return std::nullopt;
  }
  const auto t = parse_timestamp(f[2]);
  if (!t) {
    bump(rc, &RejectCounters::bad_timestamp);
    return std::nullopt;
  }
  std::uint32_t dur;
  if (!parse_u32(f[3], dur)) {  // a leading '-' fails here: negative rejected
    bump(rc, &RejectCounters::bad_duration);
    return std::nullopt;
  }
  const auto dir = parse_direction(f[4]);
  if (!dir) {
    bump(rc, &RejectCounters::bad_direction);
    return std::nullopt;
  }
  return CdrRecord{f[0], f[1], *t, dur, *dir, f[5]};
}

std::optional<SmsRecord> parse_sms_line(std::string_view line,
                                        RejectCounters* rc) {
  std::array<std::string_view, 4> f;
  if (!split_fields(line, f)) {
    bump(rc, &RejectCounters::bad_field_count);
    return std::nullopt;
  }
  if (f[0].empty() || f[1].empty()) {
    bump(rc, &RejectCounters::empty_id);
    return std::nullopt;
  }
  if (f[0] == f[1]) {
    bump(rc, &RejectCounters::self_loop);
    return std::nullopt;
  }
  const auto t = parse_timestamp(f[2]);
  if (!t) {
    bump(rc, &RejectCounters::bad_timestamp);
    return std::nullopt;
  }
  const auto dir = parse_direction(f[3]);
  if (!dir) {
    bump(rc, &RejectCounters::bad_direction);
    return std::nullopt;
  }
  return SmsRecord{f[0], f[1], *t, *dir};
}

std::optional<GroundTruthRow> parse_ground_truth_line(std::string_view line,
                                                      int min_age, int max_age,
                                                      RejectCounters* rc) {
  std::array<std::string_view, 3> f;
  if (!split_fields(line, f)) {
    bump(rc, &RejectCounters::bad_field_count);
    return std::nullopt;
  }
  if (f[0].empty()) {
    bump(rc, &RejectCounters::empty_id);
    return std::nullopt;
  }
  Gender g;
  if (f[1] == "M")
    g = Gender::male;
  else if (f[1] == "F")
    g = Gender::female;
  else {
    bump(rc, &RejectCounters::bad_gender);
    return std::nullopt;
  }
  std::uint32_t age;
  if (!parse_u32(f[2], age) || static_cast<int>(age) < min_age ||
      static_cast<int>(age) > max_age) {
    bump(rc, &RejectCounters::bad_age);
    return std::nullopt;
  }
  return GroundTruthRow{f[0], DemographicLabel{g, static_cast<std::uint8_t>(age)}};
}

}  // namespace demograph
