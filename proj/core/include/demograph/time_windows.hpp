#pragma once

#include <cstdint>

#include "demograph/civil.hpp"

namespace demograph {

// The three disjoint activity windows. Feature columns also use a derived
// "total" cell, which is the sum over these three.
enum class TimeWindow : std::uint8_t { week_daylight = 0, week_night = 1, weekend = 2 };

inline constexpr int kNumWindows = 3;

// Mon-Fri 07:00:00 <= t < 19:00:00 is daylight, the rest of Mon-Fri is
// night, Sat/Sun is weekend. A call belongs entirely to the window of its
// start timestamp even if it runs past a boundary.
inline TimeWindow classify_time_window(std::int64_t t) {
  int wd = weekday_from_days(day_of(t));  // 0 = Monday
  if (wd >= 5) return TimeWindow::weekend;
  std::int64_t sec = second_of_day(t);
  if (sec >= 7 * 3600 && sec < 19 * 3600) return TimeWindow::week_daylight;
  return TimeWindow::week_night;
}

}  // namespace demograph
