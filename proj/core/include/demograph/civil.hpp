#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace demograph {

// Proleptic Gregorian calendar arithmetic (Hinnant's algorithms). All
// timestamps in the pipeline are naive wall-clock values in one configured
// timezone; no conversions are ever applied.

constexpr std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
  int year;
  unsigned month;
  unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), m, d};
}

// 0 = Monday .. 6 = Sunday.
constexpr int weekday_from_days(std::int64_t z) {
  return static_cast<int>(((z % 7) + 10) % 7);
}

constexpr bool is_leap(int y) {
  return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr unsigned days_in_month(int y, unsigned m) {
  constexpr unsigned lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : lens[m - 1];
}

// Strict "YYYY-MM-DDTHH:MM:SS". Returns seconds since 1970-01-01T00:00:00
// in the same (unspecified) timezone as the input.
std::optional<std::int64_t> parse_timestamp(std::string_view s);

// Inverse of parse_timestamp. buf must hold >= 20 bytes; returns length (19).
int format_timestamp_to(std::int64_t t, char* buf);
std::string format_timestamp(std::int64_t t);

constexpr std::int64_t day_of(std::int64_t t) {
  return t >= 0 ? t / 86400 : (t - 86399) / 86400;
}

constexpr int second_of_day(std::int64_t t) {
  return static_cast<int>(t - day_of(t) * 86400);
}

}  // namespace demograph
