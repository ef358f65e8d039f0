#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace cricrules {

/// Rows of a confrontation matrix. The enumeration order is the row order.
enum class BattingFeature : std::size_t {
  run0,
  run1,
  run2,
  run3,
  run4,
  run5,
  run6plus,
  out,
  beaten,
  defended,
  attacked,
  front_foot,
  back_foot,
  third_man,
  square_off,
  long_off,
  long_on,
  square_leg,
  fine_leg,
};

/// Columns of a confrontation matrix. The enumeration order is the column order.
enum class BowlingFeature : std::size_t {
  short_length,
  good,
  full,
  off_line,
  middle_line,
  leg_line,
  spin,
  swing,
  fast,
  slow,
  move_in,
  move_away,
};

inline constexpr std::size_t kNumBatting = 19;
inline constexpr std::size_t kNumBowling = 12;

enum class Role { batting, bowling };

/// A feature of either role, used where both kinds share a container.
struct FeatureId {
  Role role;
  std::size_t index;

  friend bool operator==(const FeatureId&, const FeatureId&) = default;
  friend auto operator<=>(const FeatureId&, const FeatureId&) = default;
};

inline constexpr std::size_t index(BattingFeature f) { return static_cast<std::size_t>(f); }
inline constexpr std::size_t index(BowlingFeature f) { return static_cast<std::size_t>(f); }
inline constexpr BattingFeature batting_at(std::size_t i) { return static_cast<BattingFeature>(i); }
inline constexpr BowlingFeature bowling_at(std::size_t i) { return static_cast<BowlingFeature>(i); }

inline constexpr std::array<std::string_view, kNumBatting> kBattingNames = {
    "run0",   "run1",      "run2",       "run3",      "run4",       "run5",      "run6plus",
    "out",    "beaten",    "defended",   "attacked",  "front_foot", "back_foot", "third_man",
    "square_off", "long_off", "long_on", "square_leg", "fine_leg",
};

inline constexpr std::array<std::string_view, kNumBowling> kBowlingNames = {
    "short", "good", "full",  "off_line", "middle_line", "leg_line",
    "spin",  "swing", "fast", "slow",     "move_in",     "move_away",
};

inline constexpr std::string_view name(BattingFeature f) { return kBattingNames[index(f)]; }
inline constexpr std::string_view name(BowlingFeature f) { return kBowlingNames[index(f)]; }
std::string_view name(FeatureId f);

std::optional<BattingFeature> parse_batting_feature(std::string_view s);
std::optional<BowlingFeature> parse_bowling_feature(std::string_view s);

/// Outcome features come from the structured head, never from the free text.
inline constexpr bool is_outcome(BattingFeature f) { return index(f) <= index(BattingFeature::out); }

/// Short phrase used in rule sentences, e.g. "deliveries bowled on the leg stump".
std::string_view gloss(BowlingFeature f);

enum class Aspect { outcome, shotarea, footwork };

std::span<const BattingFeature> aspect_group(Aspect a);
std::optional<Aspect> parse_aspect(std::string_view s);
std::string_view name(Aspect a);

}  // namespace cricrules
