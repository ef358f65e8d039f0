#include "cricrules/features.hpp"

#include <span>

namespace cricrules {

namespace {

constexpr std::array<std::string_view, kNumBowling> kGlosses = {
    "short-pitched deliveries",
    "good length deliveries",
    "full length deliveries",
    "deliveries bowled on or outside the off stump",
    "deliveries bowled on the middle stump",
    "deliveries bowled on the leg stump",
    "spin deliveries",
    "swinging deliveries",
    "fast deliveries",
    "slow deliveries",
    "deliveries moving in",
    "deliveries moving away",
};

constexpr std::array kOutcomeGroup = {
    BattingFeature::run0, BattingFeature::run1, BattingFeature::run2,     BattingFeature::run3,
    BattingFeature::run4, BattingFeature::run5, BattingFeature::run6plus, BattingFeature::out,
};
constexpr std::array kShotAreaGroup = {
    BattingFeature::third_man, BattingFeature::square_off, BattingFeature::long_off,
    BattingFeature::long_on,   BattingFeature::square_leg, BattingFeature::fine_leg,
};
constexpr std::array kFootworkGroup = {BattingFeature::front_foot, BattingFeature::back_foot};

}  // namespace

std::string_view name(FeatureId f) {
  return f.role == Role::batting ? kBattingNames.at(f.index) : kBowlingNames.at(f.index);
}

std::optional<BattingFeature> parse_batting_feature(std::string_view s) {
  for (std::size_t i = 0; i < kNumBatting; ++i)
    if (kBattingNames[i] == s) return batting_at(i);
  return std::nullopt;
}

std::optional<BowlingFeature> parse_bowling_feature(std::string_view s) {
  for (std::size_t i = 0; i < kNumBowling; ++i)
    if (kBowlingNames[i] == s) return bowling_at(i);
  return std::nullopt;
}

std::string_view gloss(BowlingFeature f) { return kGlosses[index(f)]; }

std::span<const BattingFeature> aspect_group(Aspect a) {
  switch (a) {
    case Aspect::outcome: return kOutcomeGroup;
    case Aspect::shotarea: return kShotAreaGroup;
    case Aspect::footwork: return kFootworkGroup;
  }
  return {};
}

std::optional<Aspect> parse_aspect(std::string_view s) {
  if (s == "outcome") return Aspect::outcome;
  if (s == "shotarea") return Aspect::shotarea;
  if (s == "footwork") return Aspect::footwork;
  return std::nullopt;
}

std::string_view name(Aspect a) {
  switch (a) {
    case Aspect::outcome: return "outcome";
    case Aspect::shotarea: return "shotarea";
    case Aspect::footwork: return "footwork";
  }
  return "";
}

}  // namespace cricrules
