#include "cricrules/confrontation.hpp"

#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cricrules {

namespace {

void accumulate(ConfrontationMatrix& m, const DeliveryFeatures& d) {
  if (!d.outcome_known) {
    ++m.skipped_unknown_outcome;
    return;
  }
  if (d.bowling.none()) {
    ++m.skipped_no_bowling;
    return;
  }
  ++m.records_used;
  for (std::size_t a = 0; a < kNumBatting; ++a) {
    if (!d.batting.test(a)) continue;
    for (std::size_t b = 0; b < kNumBowling; ++b)
      if (d.bowling.test(b)) ++m.counts[a][b];
  }
}

}  // namespace

ConfrontationMatrix& ConfrontationMatrix::operator+=(const ConfrontationMatrix& other) {
  for (std::size_t a = 0; a < kNumBatting; ++a)
    for (std::size_t b = 0; b < kNumBowling; ++b) counts[a][b] += other.counts[a][b];
  records_used += other.records_used;
  skipped_unknown_outcome += other.skipped_unknown_outcome;
  skipped_no_bowling += other.skipped_no_bowling;
  return *this;
}

DeliveryFeatures extract_delivery_features(const CommentaryRecord& record, const FeatureLexicon& lex) {
  DeliveryFeatures d;
  auto outcome = try_parse_outcome(record.outcome);
  if (!outcome) return d;
  d.outcome_known = true;
  auto matched = match_text(record.text, lex);
  d.batting = matched.batting;
  d.batting.set(index(*outcome));
  d.bowling = matched.bowling;
  return d;
}

namespace serial {

ConfrontationMatrix build_matrix(std::span<const CommentaryRecord> records, const FeatureLexicon& lex) {
  ConfrontationMatrix m;
  for (const auto& r : records) accumulate(m, extract_delivery_features(r, lex));
  return m;
}

}  // namespace serial

ConfrontationMatrix build_matrix(std::span<const CommentaryRecord> records, const FeatureLexicon& lex) {
#ifdef _OPENMP
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  if (n < 256) return serial::build_matrix(records, lex);
  std::vector<ConfrontationMatrix> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) accumulate(mine, extract_delivery_features(records[i], lex));
  }
  // integer sums: merge order does not matter
  ConfrontationMatrix m;
  for (const auto& p : partial) m += p;
  return m;
#else
  return serial::build_matrix(records, lex);
#endif
}

Count sum(const ConfrontationMatrix& m) {
  Count total = 0;
  for (const auto& row : m.counts)
    for (Count v : row) total += v;
  return total;
}

std::array<Count, kNumBatting> row_sums(const ConfrontationMatrix& m) {
  std::array<Count, kNumBatting> out{};
  for (std::size_t a = 0; a < kNumBatting; ++a)
    for (Count v : m.counts[a]) out[a] += v;
  return out;
}

std::array<Count, kNumBowling> col_sums(const ConfrontationMatrix& m) {
  std::array<Count, kNumBowling> out{};
  for (const auto& row : m.counts)
    for (std::size_t b = 0; b < kNumBowling; ++b) out[b] += row[b];
  return out;
}

ConfrontationMatrix scaled(const ConfrontationMatrix& m, Count factor) {
  ConfrontationMatrix out = m;
  for (auto& row : out.counts)
    for (Count& v : row) v *= factor;
  return out;
}

std::string to_csv(const ConfrontationMatrix& m) {
  std::ostringstream os;
  os << "batting";
  for (auto n : kBowlingNames) os << ',' << n;
  os << '\n';
  for (std::size_t a = 0; a < kNumBatting; ++a) {
    os << kBattingNames[a];
    for (Count v : m.counts[a]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const ConfrontationMatrix& m) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& row : m.counts) counts.push_back(row);
  nlohmann::json opponents = nullptr;
  if (m.filter.opponents) opponents = *m.filter.opponents;
  return {
      {"rows", kBattingNames},
      {"columns", kBowlingNames},
      {"counts", counts},
      {"total", sum(m)},
      {"records_used", m.records_used},
      {"records_skipped", m.records_skipped()},
      {"skipped_unknown_outcome", m.skipped_unknown_outcome},
      {"skipped_no_bowling", m.skipped_no_bowling},
      {"filter",
       {{"player", m.filter.player},
        {"opponents", opponents},
        {"time_window", name(m.filter.window.kind)},
        {"window_key", m.filter.window.key},
        {"type", m.filter.type == Role::batting ? "batting" : "bowling"}}},
  };
}

}  // namespace cricrules
