#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cricrules/error.hpp"
#include "cricrules/synthetic.hpp"
#include "support.hpp"

using namespace cricrules;

TEST_CASE("planted conditional frequency") {
  PlantedOptions o;
  o.strength_probability = 0.9;
  const auto records = generate_synthetic(planted_spec(o), 2000, 7);
  const auto& lex = FeatureLexicon::builtin();
  std::size_t given = 0, both = 0;
  for (const auto& r : records) {
    const auto hits = testing::scan_oracle(r.text, lex);
    if (!hits.bowling.test(index(BowlingFeature::leg_line))) continue;
    ++given;
    if (hits.batting.test(index(BattingFeature::attacked))) ++both;
  }
  REQUIRE(given > 100);
  CHECK(std::abs(static_cast<double>(both) / static_cast<double>(given) - 0.9) <= 0.03);
}

TEST_CASE("generation is a pure function of generator settings, n and seed") {
  const auto spec = demo_spec();
  const auto a = generate_synthetic(spec, 500, 99);
  CHECK(a == generate_synthetic(spec, 500, 99));
  CHECK_FALSE(a == generate_synthetic(spec, 500, 100));
  // a prefix of a longer run is the shorter run
  const auto longer = generate_synthetic(spec, 800, 99);
  CHECK(std::equal(a.begin(), a.end(), longer.begin()));
}

TEST_CASE("records are valid corpus lines") {
  const auto records = generate_synthetic(demo_spec(), 1000, 1);
  std::vector<std::string> lines;
  for (const auto& r : records) lines.push_back(serialize(r));
  const auto store = ingest(std::span<const std::string>(lines));
  CHECK(store.report().rejects.empty());
  CHECK(store.records() == records);
  for (const auto& r : records) {
    CHECK(r.date >= Date(2012, 1, 1));
    CHECK(r.date < Date(2012, 1, 1).plus_days(7 * 365));
    CHECK(try_parse_outcome(r.outcome));
  }
}

TEST_CASE("filler and planted phrases match only what they should") {
  const auto& lex = FeatureLexicon::builtin();
  const auto& filler = neutral_filler();
  for (const auto& a : filler) {
    CHECK(match_text(a, lex) == MatchedFeatures{});
    for (const auto& b : filler) CHECK_MESSAGE(match_text(a + " " + b, lex) == MatchedFeatures{}, a << " " << b);
  }
  const auto& bowl = planted_bowling_phrases();
  REQUIRE(bowl.size() == kNumBowling);
  for (std::size_t j = 0; j < kNumBowling; ++j) {
    const auto hit = match_text(bowl[j], lex);
    CHECK(hit.batting.none());
    CHECK(hit.bowling.count() == 1);
    CHECK(hit.bowling.test(j));
    for (const auto& f : filler) {
      CHECK(match_text(f + " " + bowl[j], lex).bowling.count() == 1);
      CHECK(match_text(bowl[j] + " " + f, lex).bowling.count() == 1);
    }
  }
}

TEST_CASE("generator validation names the offending row") {
  auto spec = planted_spec();
  spec.players[0].channels[0].tables[2].outcomes[0].probability += 0.2;
  try {
    spec.validate();
    FAIL("expected ParameterError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParameterError);
    CHECK(std::string(e.what()).find("yorker") != std::string::npos);
  }
  spec = planted_spec();
  spec.players[0].bowling[0].probability = -0.1;
  spec.players[0].bowling[1].probability += 0.1 + 1.0 / 12.0;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = planted_spec();
  spec.players.clear();
  CHECK_THROWS_AS(spec.validate(), Error);
  PlantedOptions o;
  o.weakness = o.strength;
  CHECK_THROWS_AS(planted_spec(o), Error);
}

TEST_CASE("generator settings json round trip") {
  const auto spec = demo_spec();
  const auto again = SyntheticSpec::from_json(spec.to_json());
  CHECK(again.to_json() == spec.to_json());
  CHECK(generate_synthetic(again, 300, 5) == generate_synthetic(spec, 300, 5));
  CHECK_THROWS_AS(SyntheticSpec::from_json(nlohmann::json{{"players", 3}}), Error);
}
