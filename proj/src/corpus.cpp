#include "cricrules/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "cricrules/error.hpp"

namespace cricrules {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxTextChars = 2000;

const std::set<std::string, std::less<>> kKnownFields = {
    "match_id", "series_id", "innings", "over", "ball", "date",
    "bowler",   "batsman",   "outcome", "text", "session",
};

std::size_t utf8_length(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

bool valid_session(std::string_view s) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return false;
  int day = 0;
  int session = 0;
  return parse_int(s.substr(0, dot), day) && parse_int(s.substr(dot + 1), session) && day >= 1 &&
         session >= 1;
}

using LineResult = std::variant<std::monostate, CommentaryRecord, std::string>;

template <typename T>
bool take(const json& obj, const char* field, T& out, std::string& why) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    why = std::string("missing field '") + field + "'";
    return false;
  }
  if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) {
      why = std::string("field '") + field + "' must be a string";
      return false;
    }
  } else {
    if (!it->is_number_integer()) {
      why = std::string("field '") + field + "' must be an integer";
      return false;
    }
  }
  out = it->get<T>();
  return true;
}

LineResult parse_line(std::string_view line) {
  if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }))
    return std::monostate{};

  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) return std::string("malformed JSON");
  if (!obj.is_object()) return std::string("line is not a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!kKnownFields.contains(key)) return "unknown field '" + key + "'";

  CommentaryRecord r;
  std::string why;
  std::string date;
  if (!take(obj, "match_id", r.match_id, why) || !take(obj, "series_id", r.series_id, why) ||
      !take(obj, "innings", r.innings, why) || !take(obj, "over", r.over, why) ||
      !take(obj, "ball", r.ball, why) || !take(obj, "date", date, why) ||
      !take(obj, "bowler", r.bowler, why) || !take(obj, "batsman", r.batsman, why) ||
      !take(obj, "outcome", r.outcome, why) || !take(obj, "text", r.text, why))
    return why;

  if (r.innings < 1 || r.innings > 4) return std::string("innings must be in 1..4");
  if (r.over < 0) return std::string("over must be >= 0");
  if (r.ball < 1) return std::string("ball must be >= 1");
  auto parsed = Date::parse(date);
  if (!parsed) return "invalid date '" + date + "'";
  r.date = *parsed;
  if (normalize_name(r.bowler).empty()) return std::string("empty bowler");
  if (normalize_name(r.batsman).empty()) return std::string("empty batsman");
  if (normalize_name(r.bowler) == normalize_name(r.batsman))
    return std::string("bowler and batsman are the same player");
  if (r.outcome.empty()) return std::string("empty outcome");
  if (utf8_length(r.text) > kMaxTextChars) return std::string("text longer than 2000 characters");

  if (auto it = obj.find("session"); it != obj.end()) {
    if (!it->is_string() || !valid_session(it->get_ref<const std::string&>()))
      return std::string("session must be a string '<day>.<session>'");
    r.session = it->get<std::string>();
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Date

Date::Date(int y, unsigned m, unsigned d)
    : days_(std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}}) {}

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0;
  int m = 0;
  int d = 0;
  if (!parse_int(iso.substr(0, 4), y) || !parse_int(iso.substr(5, 2), m) ||
      !parse_int(iso.substr(8, 2), d))
    return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{std::chrono::sys_days{ymd}};
}

std::string Date::iso() const {
  std::chrono::year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

// ---------------------------------------------------------------------------
// names and windows

std::string normalize_name(std::string_view name) {
  auto first = name.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = name.find_last_not_of(" \t\r\n");
  std::string out(name.substr(first, last - first + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<WindowKind> parse_window_kind(std::string_view s) {
  if (s == "session") return WindowKind::session;
  if (s == "day") return WindowKind::day;
  if (s == "innings") return WindowKind::innings;
  if (s == "match") return WindowKind::match;
  if (s == "series") return WindowKind::series;
  if (s == "career") return WindowKind::career;
  return std::nullopt;
}

std::string_view name(WindowKind k) {
  switch (k) {
    case WindowKind::session: return "session";
    case WindowKind::day: return "day";
    case WindowKind::innings: return "innings";
    case WindowKind::match: return "match";
    case WindowKind::series: return "series";
    case WindowKind::career: return "career";
  }
  return "";
}

void FilterTuple::validate() const {
  if (normalize_name(player).empty()) throw Error(ErrorCode::ParameterError, "filter player is empty");
  if (window.range && window.range->end < window.range->start)
    throw Error(ErrorCode::ParameterError, "filter date range ends before it starts");
  if (window.kind != WindowKind::career && window.key.empty())
    throw Error(ErrorCode::ParameterError,
                "time window '" + std::string(name(window.kind)) + "' needs a key");
}

// ---------------------------------------------------------------------------
// ingestion

double IngestReport::reject_rate() const {
  std::size_t considered = accepted + rejects.size();
  return considered == 0 ? 0.0 : static_cast<double>(rejects.size()) / static_cast<double>(considered);
}

std::string IngestReport::summary() const {
  std::ostringstream os;
  os << "lines read: " << lines_read << "\n"
     << "blank lines: " << blank_lines << "\n"
     << "records accepted: " << accepted << "\n"
     << "lines rejected: " << rejects.size() << "\n";
  for (const auto& r : rejects) os << "  line " << r.line << ": " << r.reason << "\n";
  return os.str();
}

json IngestReport::to_json() const {
  json rej = json::array();
  for (const auto& r : rejects) rej.push_back({{"line", r.line}, {"reason", r.reason}});
  return {{"lines_read", lines_read},
          {"blank_lines", blank_lines},
          {"accepted", accepted},
          {"rejected", rejects.size()},
          {"rejects", rej}};
}

CorpusStore::CorpusStore(std::vector<CommentaryRecord> records, IngestReport report)
    : records_(std::move(records)), report_(std::move(report)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    by_batsman_[normalize_name(records_[i].batsman)].push_back(i);
    by_bowler_[normalize_name(records_[i].bowler)].push_back(i);
  }
}

std::span<const std::size_t> CorpusStore::positions(std::string_view player, Role role) const {
  const auto& index = role == Role::batting ? by_batsman_ : by_bowler_;
  auto it = index.find(normalize_name(player));
  if (it == index.end()) return {};
  return it->second;
}

std::vector<std::string> CorpusStore::players(Role role) const {
  const auto& index = role == Role::batting ? by_batsman_ : by_bowler_;
  std::vector<std::string> out;
  out.reserve(index.size());
  for (const auto& [k, _] : index) out.push_back(k);
  return out;
}

std::string CorpusStore::display_name(std::string_view player) const {
  auto key = normalize_name(player);
  for (Role role : {Role::batting, Role::bowling}) {
    auto pos = positions(key, role);
    if (!pos.empty()) {
      const auto& r = records_[pos.front()];
      return role == Role::batting ? r.batsman : r.bowler;
    }
  }
  return std::string(player);
}

CorpusStore ingest(std::span<const std::string> lines, const IngestOptions& options) {
  if (options.schema_version != kSchemaV1)
    throw Error(ErrorCode::ParameterError, "unsupported schema version '" + options.schema_version + "'");

  std::vector<LineResult> parsed(lines.size());
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel for schedule(static) if (options.parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) parsed[i] = parse_line(lines[i]);

  // merge in line order
  IngestReport report;
  report.lines_read = lines.size();
  std::vector<CommentaryRecord> records;
  records.reserve(lines.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (std::holds_alternative<std::monostate>(parsed[i])) {
      ++report.blank_lines;
    } else if (auto* r = std::get_if<CommentaryRecord>(&parsed[i])) {
      records.push_back(std::move(*r));
    } else {
      report.rejects.push_back({i + 1, std::get<std::string>(parsed[i])});
    }
  }
  report.accepted = records.size();
  return CorpusStore(std::move(records), std::move(report));
}

CorpusStore ingest(std::istream& in, const IngestOptions& options) {
  if (!in) throw Error(ErrorCode::IoError, "corpus stream is not readable");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "error while reading corpus stream");
  return ingest(lines, options);
}

CorpusStore ingest_file(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open corpus '" + path + "'");
  return ingest(in, options);
}

std::string serialize(const CommentaryRecord& r) {
  json obj = {{"match_id", r.match_id}, {"series_id", r.series_id}, {"innings", r.innings},
              {"over", r.over},         {"ball", r.ball},           {"date", r.date.iso()},
              {"bowler", r.bowler},     {"batsman", r.batsman},     {"outcome", r.outcome},
              {"text", r.text}};
  if (r.session) obj["session"] = *r.session;
  return obj.dump();
}

void serialize(const CorpusStore& store, std::ostream& out) {
  for (const auto& r : store.records()) out << serialize(r) << '\n';
}

// ---------------------------------------------------------------------------
// filtering and splitting

namespace {

struct WindowKey {
  std::string match_id;
  std::string unit;  // innings number, day, or day.session
};

WindowKey split_key(const std::string& key) {
  auto slash = key.rfind('/');
  if (slash == std::string::npos)
    throw Error(ErrorCode::ParameterError, "window key '" + key + "' must look like match_id/unit");
  return {key.substr(0, slash), key.substr(slash + 1)};
}

bool in_window(const CommentaryRecord& r, const TimeWindow& w, const WindowKey& k) {
  if (w.range && (r.date < w.range->start || w.range->end < r.date)) return false;
  switch (w.kind) {
    case WindowKind::career: return true;
    case WindowKind::series: return r.series_id == w.key;
    case WindowKind::match: return r.match_id == w.key;
    case WindowKind::innings: return r.match_id == k.match_id && std::to_string(r.innings) == k.unit;
    case WindowKind::day: {
      if (r.match_id != k.match_id) return false;
      return r.session->substr(0, r.session->find('.')) == k.unit;
    }
    case WindowKind::session: return r.match_id == k.match_id && *r.session == k.unit;
  }
  return false;
}

}  // namespace

FilterResult filter_records(std::span<const CommentaryRecord> records, const FilterTuple& f) {
  f.validate();
  const std::string player = normalize_name(f.player);
  std::set<std::string, std::less<>> opponents;
  if (f.opponents)
    for (const auto& o : *f.opponents) opponents.insert(normalize_name(o));

  WindowKey key;
  if (f.window.kind == WindowKind::innings || f.window.kind == WindowKind::day ||
      f.window.kind == WindowKind::session)
    key = split_key(f.window.key);
  const bool needs_session = f.window.kind == WindowKind::day || f.window.kind == WindowKind::session;

  FilterResult out;
  bool player_seen = false;
  for (const auto& r : records) {
    const std::string& self = f.type == Role::batting ? r.batsman : r.bowler;
    const std::string& other = f.type == Role::batting ? r.bowler : r.batsman;
    if (normalize_name(self) != player) continue;
    player_seen = true;
    if (needs_session && !r.session)
      throw Error(ErrorCode::SessionUnavailable,
                  "window '" + std::string(name(f.window.kind)) +
                      "' needs a session field but match " + r.match_id + " has none");
    if (f.opponents && !opponents.contains(normalize_name(other))) continue;
    if (!in_window(r, f.window, key)) continue;
    out.records.push_back(r);
  }
  if (!player_seen) {
    out.warning = true;
    out.message = "player '" + f.player + "' does not appear as " +
                  (f.type == Role::batting ? "batsman" : "bowler") + " in the corpus";
  } else if (out.records.empty()) {
    out.warning = true;
    out.message = "no records for '" + f.player + "' match the filter";
  }
  return out;
}

FilterResult filter_records(const CorpusStore& store, const FilterTuple& f) {
  if (store.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus store is empty");
  f.validate();
  auto pos = store.positions(f.player, f.type);
  std::vector<CommentaryRecord> candidates;
  candidates.reserve(pos.size());
  for (auto i : pos) candidates.push_back(store.records()[i]);
  return filter_records(candidates, f);
}

HoldoutSplit holdout_split(std::span<const CommentaryRecord> records, int window_days) {
  if (window_days < 1) throw Error(ErrorCode::ParameterError, "window_days must be >= 1");
  HoldoutSplit split;
  if (records.empty()) return split;
  Date latest = std::max_element(records.begin(), records.end(), [](const auto& a, const auto& b) {
                  return a.date < b.date;
                })->date;
  Date cutoff = latest.plus_days(-window_days);
  for (const auto& r : records) (cutoff < r.date ? split.test : split.train).push_back(r);
  return split;
}

}  // namespace cricrules
