#include "demograph/civil.hpp"

namespace demograph {

namespace {

inline bool parse_fixed_uint(std::string_view s, std::size_t pos,
                             std::size_t len, unsigned& out) {
  unsigned v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(std::string_view s) {
  if (s.size() != 19) return std::nullopt;
  if (s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
      s[16] != ':')
    return std::nullopt;
  unsigned y, mo, d, h, mi, se;
  if (!parse_fixed_uint(s, 0, 4, y) || !parse_fixed_uint(s, 5, 2, mo) ||
      !parse_fixed_uint(s, 8, 2, d) || !parse_fixed_uint(s, 11, 2, h) ||
      !parse_fixed_uint(s, 14, 2, mi) || !parse_fixed_uint(s, 17, 2, se))
    return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(static_cast<int>(y), mo))
    return std::nullopt;
  if (h > 23 || mi > 59 || se > 59) return std::nullopt;
  return days_from_civil(static_cast<int>(y), mo, d) * 86400 +
         static_cast<std::int64_t>(h) * 3600 + mi * 60 + se;
}

int format_timestamp_to(std::int64_t t, char* buf) {
  const std::int64_t z = day_of(t);
  const CivilDate cd = civil_from_days(z);
  const int sod = second_of_day(t);
  auto put2 = [&](int pos, int v) {
    buf[pos] = static_cast<char>('0' + v / 10);
    buf[pos + 1] = static_cast<char>('0' + v % 10);
  };
  int y = cd.year;
  buf[0] = static_cast<char>('0' + y / 1000 % 10);
  buf[1] = static_cast<char>('0' + y / 100 % 10);
  buf[2] = static_cast<char>('0' + y / 10 % 10);
  buf[3] = static_cast<char>('0' + y % 10);
  buf[4] = '-';
  put2(5, static_cast<int>(cd.month));
  buf[7] = '-';
  put2(8, static_cast<int>(cd.day));
  buf[10] = 'T';
  put2(11, sod / 3600);
  buf[13] = ':';
  put2(14, sod / 60 % 60);
  buf[16] = ':';
  put2(17, sod % 60);
  return 19;
}

std::string format_timestamp(std::int64_t t) {
  char buf[20];
  const int n = format_timestamp_to(t, buf);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace demograph
