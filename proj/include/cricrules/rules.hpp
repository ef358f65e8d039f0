#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cricrules/ca.hpp"
#include "cricrules/features.hpp"

namespace cricrules {

enum class Polarity { strength, weakness, aspect };
enum class PlayerRole { batsman, bowler };

std::string_view name(Polarity p);
std::string_view name(PlayerRole r);

inline constexpr std::size_t kDefaultDims = 2;
inline constexpr double kTieTolerance = 1e-9;

struct Rule {
  std::string player;
  Polarity polarity = Polarity::strength;
  PlayerRole role = PlayerRole::batsman;
  BattingFeature batting_feature = BattingFeature::attacked;
  BowlingFeature bowling_feature = BowlingFeature::short_length;
  double score = 0.0;
  std::size_t rank = 1;       // 1-based within (player, polarity, role, batting_feature)
  std::size_t dims_used = 0;  // min(requested dims, retained dims)

  /// e.g. "Smith attacks deliveries bowled on the leg stump".
  std::string sentence() const;
};

struct ScoredFeature {
  BowlingFeature feature;
  double score;
};

/// Inner products of the anchor's row principal coordinates with every
/// surviving bowling feature's column principal coordinates over the first
/// min(dims, K) dimensions, sorted descending. Scores within
/// kTieTolerance * max|score| of each other tie, and ties keep enumeration order.
/// Throws FeatureUnavailable if the anchor was dropped or is outside a subset.
std::vector<ScoredFeature> score_bowling_features(const CAResult& ca, BattingFeature anchor,
                                                  std::size_t dims = kDefaultDims);

/// Batsman strength is anchored on `attacked`, bowler strength on `beaten`.
BattingFeature strength_anchor(PlayerRole role);
/// Batsman weakness is anchored on `beaten`, bowler weakness on `attacked`.
BattingFeature weakness_anchor(PlayerRole role);

std::vector<Rule> strength_rules(const CAResult& ca, const std::string& player, PlayerRole role,
                                 std::size_t k, std::size_t dims = kDefaultDims);
std::vector<Rule> weakness_rules(const CAResult& ca, const std::string& player, PlayerRole role,
                                 std::size_t k, std::size_t dims = kDefaultDims);

/// Top-k bowling features for every surviving feature of an aspect group.
std::vector<Rule> aspect_rules(const CAResult& ca, const std::string& player, Aspect aspect,
                               std::size_t k, std::size_t dims = kDefaultDims);

/// Number of (batting, bowling) pairs that can form a rule.
std::size_t rule_budget(const CAResult& ca);

nlohmann::json to_json(const Rule& rule);
nlohmann::json to_json(const std::vector<Rule>& rules);

}  // namespace cricrules
