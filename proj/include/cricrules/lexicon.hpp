#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cricrules/features.hpp"

namespace cricrules {

/// Lowercase tokens split on anything outside [a-z0-9']. Stop words are kept:
/// "off", "on", "away", "full" and friends carry meaning in cricket text.
std::vector<std::string> tokenize(std::string_view text);

/// All unigrams in order, then every adjacent pair joined by one space.
std::vector<std::string> extract_ngrams(std::span<const std::string> tokens);

struct MatchedFeatures {
  std::bitset<kNumBatting> batting;
  std::bitset<kNumBowling> bowling;

  friend bool operator==(const MatchedFeatures&, const MatchedFeatures&) = default;
};

/// Phrase dictionary mapping unigrams/bigrams to features. A phrase belongs to
/// at most one feature per role; outcome features never have phrases.
class FeatureLexicon {
 public:
  FeatureLexicon() = default;

  /// Expects {feature_name: [phrase, ...]} covering all 31 features.
  /// Throws LexiconError naming the offending feature or phrase.
  static FeatureLexicon from_json(const nlohmann::json& doc);
  static FeatureLexicon load(const std::string& path);

  /// The lexicon compiled into the library.
  static const FeatureLexicon& builtin();

  const std::vector<std::string>& phrases(BattingFeature f) const { return batting_[index(f)]; }
  const std::vector<std::string>& phrases(BowlingFeature f) const { return bowling_[index(f)]; }

  std::optional<BattingFeature> batting_for(std::string_view phrase) const;
  std::optional<BowlingFeature> bowling_for(std::string_view phrase) const;

  nlohmann::json to_json() const;

 private:
  std::array<std::vector<std::string>, kNumBatting> batting_;
  std::array<std::vector<std::string>, kNumBowling> bowling_;
  std::unordered_map<std::string, BattingFeature> batting_index_;
  std::unordered_map<std::string, BowlingFeature> bowling_index_;
};

/// A feature is present iff one of its phrases equals one of the n-grams.
MatchedFeatures match_features(std::span<const std::string> ngrams, const FeatureLexicon& lex);

/// tokenize + extract_ngrams + match_features.
MatchedFeatures match_text(std::string_view text, const FeatureLexicon& lex);

/// Maps the structured outcome ("no run", "1 run", "FOUR", "SIX", "OUT", ...)
/// to its outcome feature. Throws UnknownOutcomeError otherwise.
BattingFeature parse_outcome(std::string_view outcome_token);

/// Non-throwing variant.
std::optional<BattingFeature> try_parse_outcome(std::string_view outcome_token);

}  // namespace cricrules
