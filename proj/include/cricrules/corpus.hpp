#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cricrules/features.hpp"

namespace cricrules {

/// Calendar date at day resolution.
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::sys_days d) : days_(d) {}
  Date(int y, unsigned m, unsigned d);

  /// Strict YYYY-MM-DD; nullopt when malformed or not a real calendar day.
  static std::optional<Date> parse(std::string_view iso);

  std::string iso() const;
  std::chrono::sys_days days() const { return days_; }
  Date plus_days(long n) const { return Date{days_ + std::chrono::days{n}}; }

  friend auto operator<=>(const Date&, const Date&) = default;
  friend bool operator==(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

struct CommentaryRecord {
  std::string match_id;
  std::string series_id;
  int innings = 1;
  int over = 0;
  int ball = 1;
  Date date;
  std::string bowler;
  std::string batsman;
  std::string outcome;
  std::string text;
  // "<day>.<session>" within the match, e.g. "2.1"; absent in most corpora.
  std::optional<std::string> session;

  friend bool operator==(const CommentaryRecord&, const CommentaryRecord&) = default;
};

/// Trimmed, ASCII-lowercased player name used for all matching.
std::string normalize_name(std::string_view name);

enum class WindowKind { session, day, innings, match, series, career };

std::optional<WindowKind> parse_window_kind(std::string_view s);
std::string_view name(WindowKind k);

struct DateRange {
  Date start;
  Date end;  // inclusive
};

/// Which slice of a player's history to keep. `key` selects the unit for
/// non-career kinds: match -> match_id, series -> series_id,
/// innings -> "match_id/innings", day -> "match_id/day",
/// session -> "match_id/day.session".
struct TimeWindow {
  WindowKind kind = WindowKind::career;
  std::string key;
  std::optional<DateRange> range;
};

struct FilterTuple {
  std::string player;
  std::optional<std::vector<std::string>> opponents;  // nullopt means ALL
  TimeWindow window;
  Role type = Role::batting;

  /// Throws ParameterError on an empty player, a reversed date range or a
  /// missing window key.
  void validate() const;
};

struct Reject {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct IngestReport {
  std::size_t lines_read = 0;
  std::size_t blank_lines = 0;
  std::size_t accepted = 0;
  std::vector<Reject> rejects;

  double reject_rate() const;
  bool exceeds(double max_reject_rate) const { return reject_rate() > max_reject_rate; }
  std::string summary() const;
  nlohmann::json to_json() const;
};

/// Immutable once built; safe to share across threads.
class CorpusStore {
 public:
  CorpusStore() = default;
  CorpusStore(std::vector<CommentaryRecord> records, IngestReport report);

  const std::vector<CommentaryRecord>& records() const { return records_; }
  const IngestReport& report() const { return report_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

  /// Record positions where `player` (any spelling that normalizes equal)
  /// appears in `role`, in corpus order.
  std::span<const std::size_t> positions(std::string_view player, Role role) const;

  /// Distinct normalized names seen in a role, sorted.
  std::vector<std::string> players(Role role) const;

  /// Original spelling of the first occurrence of a normalized name.
  std::string display_name(std::string_view player) const;

 private:
  std::vector<CommentaryRecord> records_;
  IngestReport report_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_batsman_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_bowler_;
};

inline constexpr std::string_view kSchemaV1 = "v1";
inline constexpr double kDefaultMaxRejectRate = 0.10;

struct IngestOptions {
  std::string schema_version{kSchemaV1};
  bool parallel = true;
};

/// Parses one JSON-per-line corpus. Malformed lines become rejects with
/// their line number; they never abort ingestion.
CorpusStore ingest(std::span<const std::string> lines, const IngestOptions& options = {});
CorpusStore ingest(std::istream& in, const IngestOptions& options = {});
CorpusStore ingest_file(const std::string& path, const IngestOptions& options = {});

/// One corpus line. Parsing it back yields the same record.
std::string serialize(const CommentaryRecord& record);
void serialize(const CorpusStore& store, std::ostream& out);

struct FilterResult {
  std::vector<CommentaryRecord> records;
  bool warning = false;
  std::string message;
};

FilterResult filter_records(const CorpusStore& store, const FilterTuple& filter);
FilterResult filter_records(std::span<const CommentaryRecord> records, const FilterTuple& filter);

struct HoldoutSplit {
  std::vector<CommentaryRecord> train;
  std::vector<CommentaryRecord> test;
};

inline constexpr int kDefaultWindowDays = 365;

/// Test half: records dated strictly after (latest date - window_days).
HoldoutSplit holdout_split(std::span<const CommentaryRecord> records,
                           int window_days = kDefaultWindowDays);

}  // namespace cricrules
