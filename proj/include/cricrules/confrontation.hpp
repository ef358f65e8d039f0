#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cricrules/corpus.hpp"
#include "cricrules/features.hpp"
#include "cricrules/lexicon.hpp"

namespace cricrules {

using Count = std::int64_t;

/// 19x12 co-occurrence counts of batting features (rows) and bowling
/// features (columns) for one filtered slice of commentary.
struct ConfrontationMatrix {
  std::array<std::array<Count, kNumBowling>, kNumBatting> counts{};
  FilterTuple filter;
  std::size_t records_used = 0;
  std::size_t skipped_unknown_outcome = 0;
  std::size_t skipped_no_bowling = 0;

  std::size_t records_skipped() const { return skipped_unknown_outcome + skipped_no_bowling; }

  Count& at(BattingFeature a, BowlingFeature b) { return counts[index(a)][index(b)]; }
  Count at(BattingFeature a, BowlingFeature b) const { return counts[index(a)][index(b)]; }

  /// Entrywise sum; bookkeeping counters add too. The filter is kept from *this.
  ConfrontationMatrix& operator+=(const ConfrontationMatrix& other);

  friend bool operator==(const ConfrontationMatrix& a, const ConfrontationMatrix& b) {
    return a.counts == b.counts && a.records_used == b.records_used &&
           a.skipped_unknown_outcome == b.skipped_unknown_outcome &&
           a.skipped_no_bowling == b.skipped_no_bowling;
  }
};

/// Batting features of one delivery: its outcome plus every batting phrase
/// hit in the text. outcome_known is false for an unrecognized outcome token.
struct DeliveryFeatures {
  std::bitset<kNumBatting> batting;
  std::bitset<kNumBowling> bowling;
  bool outcome_known = false;
};

DeliveryFeatures extract_delivery_features(const CommentaryRecord& record, const FeatureLexicon& lex);

/// Counts every (batting, bowling) pair of each delivery once. Deliveries
/// with an unknown outcome or no bowling feature are skipped and counted.
ConfrontationMatrix build_matrix(std::span<const CommentaryRecord> records, const FeatureLexicon& lex);

namespace serial {
ConfrontationMatrix build_matrix(std::span<const CommentaryRecord> records, const FeatureLexicon& lex);
}  // namespace serial

Count sum(const ConfrontationMatrix& m);
std::array<Count, kNumBatting> row_sums(const ConfrontationMatrix& m);
std::array<Count, kNumBowling> col_sums(const ConfrontationMatrix& m);

/// Every count multiplied by `factor`.
ConfrontationMatrix scaled(const ConfrontationMatrix& m, Count factor);

/// Header of bowling names, first column of batting names, integer cells.
std::string to_csv(const ConfrontationMatrix& m);
nlohmann::json to_json(const ConfrontationMatrix& m);

}  // namespace cricrules
