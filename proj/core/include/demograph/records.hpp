#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace demograph {

enum class Direction : std::uint8_t { incoming, outgoing };

enum class Gender : std::uint8_t { male = 0, female = 1 };

// Age categories used throughout: [10,25) [25,35) [35,50) [50,inf).
struct AgeGroups {
  static constexpr int kCount = 4;

  static constexpr int group_of(int age) {
    if (age < 25) return 0;
    if (age < 35) return 1;
    if (age < 50) return 2;
    return 3;
  }

  static const char* name(int group);
};

struct DemographicLabel {
  Gender gender;
  std::uint8_t age;  // years

  int age_group() const { return AgeGroups::group_of(age); }
};

// One voice-call event. The id fields view into the parsed line and stay
// valid only as long as the input buffer; ingestion interns them immediately.
struct CdrRecord {
  std::string_view caller;
  std::string_view callee;
  std::int64_t timestamp;    // seconds, configured-timezone wall clock
  std::uint32_t duration;    // seconds
  Direction direction;       // relative to the operator client that logged it
  std::string_view tower;    // opaque, may be empty
};

struct SmsRecord {
  std::string_view sender;
  std::string_view receiver;
  std::int64_t timestamp;
  Direction direction;
};

// Per-line rejection reasons; parsing never aborts the stream.
struct RejectCounters {
  std::uint64_t bad_field_count = 0;
  std::uint64_t bad_timestamp = 0;
  std::uint64_t bad_duration = 0;
  std::uint64_t bad_direction = 0;
  std::uint64_t empty_id = 0;
  std::uint64_t self_loop = 0;
  std::uint64_t out_of_window = 0;
  std::uint64_t bad_gender = 0;
  std::uint64_t bad_age = 0;
  std::uint64_t duplicate_label = 0;
  std::uint64_t subset_violation = 0;

  std::uint64_t total() const {
    return bad_field_count + bad_timestamp + bad_duration + bad_direction +
           empty_id + self_loop + out_of_window + bad_gender + bad_age +
           duplicate_label + subset_violation;
  }

  void add(const RejectCounters& o) {
    bad_field_count += o.bad_field_count;
    bad_timestamp += o.bad_timestamp;
    bad_duration += o.bad_duration;
    bad_direction += o.bad_direction;
    empty_id += o.empty_id;
    self_loop += o.self_loop;
    out_of_window += o.out_of_window;
    bad_gender += o.bad_gender;
    bad_age += o.bad_age;
    duplicate_label += o.duplicate_label;
    subset_violation += o.subset_violation;
  }
};

// CSV layouts:
//   CDR: caller,callee,ISO8601-timestamp,duration_seconds,direction{IN|OUT},tower
//   SMS: sender,receiver,ISO8601-timestamp,direction{IN|OUT}
// The tower field may be empty. Malformed lines yield nullopt and bump the
// matching counter.
std::optional<CdrRecord> parse_cdr_line(std::string_view line,
                                        RejectCounters* rc = nullptr);
std::optional<SmsRecord> parse_sms_line(std::string_view line,
                                        RejectCounters* rc = nullptr);

// Ground-truth CSV row: user_id,gender{M|F},age_years.
struct GroundTruthRow {
  std::string_view user;
  DemographicLabel label;
};
std::optional<GroundTruthRow> parse_ground_truth_line(
    std::string_view line, int min_age, int max_age,
    RejectCounters* rc = nullptr);

}  // namespace demograph
