#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cricrules/corpus.hpp"

namespace cricrules {

struct WeightedPhrase {
  std::string phrase;
  double probability = 0.0;
};

/// Distribution of one batting phrase given the delivery's bowling phrase.
struct ConditionalTable {
  std::string given;
  std::vector<WeightedPhrase> outcomes;
};

/// An independent batting aspect (response, footwork, ...). A bowling phrase
/// without a table contributes no phrase from this channel.
struct PhraseChannel {
  std::string name;
  std::vector<ConditionalTable> tables;
};

struct SyntheticPlayer {
  std::string name;  // the batsman
  std::vector<std::string> opponents;
  std::vector<WeightedPhrase> bowling;
  std::vector<PhraseChannel> channels;
  std::vector<WeightedPhrase> outcomes;  // structured outcome tokens
};

/// Planted-dependency corpus description. Records are assigned to players
/// round-robin and dated uniformly in [start, start + span_days).
struct SyntheticSpec {
  std::vector<SyntheticPlayer> players;
  Date start{2010, 1, 1};
  int span_days = 3650;
  std::vector<std::string> filler;

  /// Throws ParameterError naming the offending row when a distribution is
  /// negative, empty or does not sum to 1.
  void validate() const;

  static SyntheticSpec from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

/// Pure function of (spec, n, seed).
std::vector<CommentaryRecord> generate_synthetic(const SyntheticSpec& spec, std::size_t n, std::uint64_t seed);

/// Words that match no phrase of the built-in lexicon, alone or in any
/// adjacent pair with each other or with the planted phrases.
const std::vector<std::string>& neutral_filler();

/// One phrase per bowling feature, matching only that feature.
const std::vector<std::string>& planted_bowling_phrases();

struct PlantedOptions {
  std::string batsman = "Planted Batsman";
  std::size_t strength = 5;  // bowling feature index paired with "attacked"
  std::size_t weakness = 7;  // bowling feature index paired with "beaten"
  double strength_probability = 0.85;
  double weakness_probability = 0.75;
  // pairs front_foot with the full length phrase when set
  bool plant_footwork = false;
};

/// Single-batsman corpus with attacked<->leg_line and beaten<->swing by default.
SyntheticSpec planted_spec(const PlantedOptions& options = {});

/// A roster of batsmen with varied planted strengths and weaknesses, bowling
/// to a shared pool of bowlers. Used by the demo command.
SyntheticSpec demo_spec();

}  // namespace cricrules
