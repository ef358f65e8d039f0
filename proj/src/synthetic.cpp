#include "cricrules/synthetic.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "cricrules/error.hpp"
#include "cricrules/features.hpp"
#include "cricrules/random.hpp"

namespace cricrules {

using nlohmann::json;

namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(const std::vector<WeightedPhrase>& dist, const std::string& where) {
  if (dist.empty()) throw Error(ErrorCode::ParameterError, "empty distribution in " + where);
  double total = 0.0;
  for (const auto& w : dist) {
    if (!(w.probability >= 0.0) || !std::isfinite(w.probability))
      throw Error(ErrorCode::ParameterError, "negative or non-finite probability for '" + w.phrase + "' in " + where);
    total += w.probability;
  }
  if (std::abs(total - 1.0) > kSumTolerance)
    throw Error(ErrorCode::ParameterError,
                "probabilities in " + where + " sum to " + std::to_string(total) + ", not 1");
}

const std::string& sample(const std::vector<WeightedPhrase>& dist, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (const auto& w : dist) {
    acc += w.probability;
    if (u < acc) return w.phrase;
  }
  return dist.back().phrase;
}

// Arrays of [phrase, probability] pairs: sampling depends on the order.
json weighted_to_json(const std::vector<WeightedPhrase>& dist) {
  json out = json::array();
  for (const auto& w : dist) out.push_back(json::array({w.phrase, w.probability}));
  return out;
}

std::vector<WeightedPhrase> weighted_from_json(const json& doc) {
  std::vector<WeightedPhrase> out;
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error(ErrorCode::ParameterError, "distribution entries must be [phrase, probability] pairs");
    out.push_back({pair[0].get<std::string>(), pair[1].get<double>()});
  }
  return out;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (players.empty()) throw Error(ErrorCode::ParameterError, "synthetic spec has no players");
  if (span_days < 1) throw Error(ErrorCode::ParameterError, "span_days must be >= 1");
  if (filler.empty()) throw Error(ErrorCode::ParameterError, "synthetic spec has no filler words");
  for (const auto& p : players) {
    if (p.opponents.empty()) throw Error(ErrorCode::ParameterError, "player '" + p.name + "' has no opponents");
    for (const auto& o : p.opponents)
      if (normalize_name(o) == normalize_name(p.name))
        throw Error(ErrorCode::ParameterError, "player '" + p.name + "' cannot oppose themself");
    check_distribution(p.bowling, "bowling row of player '" + p.name + "'");
    check_distribution(p.outcomes, "outcome row of player '" + p.name + "'");
    for (const auto& ch : p.channels)
      for (const auto& t : ch.tables)
        check_distribution(t.outcomes,
                           "row '" + t.given + "' of channel '" + ch.name + "' of player '" + p.name + "'");
  }
}

std::vector<CommentaryRecord> generate_synthetic(const SyntheticSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  std::vector<CommentaryRecord> out;
  out.reserve(n);
  const std::size_t num_players = spec.players.size();

  auto filler = [&]() -> const std::string& { return spec.filler[rng.below(spec.filler.size())]; };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& player = spec.players[i % num_players];
    const std::size_t seq = i / num_players;

    CommentaryRecord r;
    r.batsman = player.name;
    r.bowler = player.opponents[rng.below(player.opponents.size())];
    r.date = spec.start.plus_days(static_cast<long>(rng.below(static_cast<std::uint64_t>(spec.span_days))));
    r.match_id = "syn-" + r.date.iso();
    r.series_id = "syn-" + r.date.iso().substr(0, 4);
    r.innings = 1 + static_cast<int>(seq % 2);
    r.over = static_cast<int>((seq / 6) % 150);
    r.ball = static_cast<int>(seq % 6) + 1;
    r.outcome = sample(player.outcomes, rng);

    const std::string& bowl = sample(player.bowling, rng);
    std::string text = filler() + " " + bowl + ", " + filler();
    for (const auto& ch : player.channels) {
      for (const auto& t : ch.tables) {
        if (t.given != bowl) continue;
        text += " " + sample(t.outcomes, rng) + " " + filler();
        break;
      }
    }
    r.text = std::move(text);
    out.push_back(std::move(r));
  }
  return out;
}

SyntheticSpec SyntheticSpec::from_json(const json& doc) {
  try {
    SyntheticSpec spec;
    if (doc.contains("start")) {
      auto d = Date::parse(doc.at("start").get<std::string>());
      if (!d) throw Error(ErrorCode::ParameterError, "synthetic spec start is not a date");
      spec.start = *d;
    }
    spec.span_days = doc.value("span_days", spec.span_days);
    spec.filler = doc.contains("filler") ? doc.at("filler").get<std::vector<std::string>>() : neutral_filler();
    for (const auto& p : doc.at("players")) {
      SyntheticPlayer player;
      player.name = p.at("name").get<std::string>();
      player.opponents = p.at("opponents").get<std::vector<std::string>>();
      player.bowling = weighted_from_json(p.at("bowling"));
      player.outcomes = weighted_from_json(p.at("outcomes"));
      const json channels = p.value("channels", json::array());
      for (const auto& c : channels) {
        PhraseChannel ch{c.at("name").get<std::string>(), {}};
        for (const auto& t : c.at("tables"))
          ch.tables.push_back({t.at("given").get<std::string>(), weighted_from_json(t.at("outcomes"))});
        player.channels.push_back(std::move(ch));
      }
      spec.players.push_back(std::move(player));
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParameterError, std::string("malformed synthetic spec: ") + e.what());
  }
}

json SyntheticSpec::to_json() const {
  json players_json = json::array();
  for (const auto& p : players) {
    json channels = json::array();
    for (const auto& ch : p.channels) {
      json tables = json::array();
      for (const auto& t : ch.tables) tables.push_back({{"given", t.given}, {"outcomes", weighted_to_json(t.outcomes)}});
      channels.push_back({{"name", ch.name}, {"tables", tables}});
    }
    players_json.push_back({{"name", p.name},
                            {"opponents", p.opponents},
                            {"bowling", weighted_to_json(p.bowling)},
                            {"outcomes", weighted_to_json(p.outcomes)},
                            {"channels", channels}});
  }
  return {{"start", start.iso()}, {"span_days", span_days}, {"filler", filler}, {"players", players_json}};
}

const std::vector<std::string>& neutral_filler() {
  static const std::vector<std::string> words = {"that", "one", "there", "this", "delivery", "nicely",
                                                 "again", "now", "he", "watches", "player", "so"};
  return words;
}

const std::vector<std::string>& planted_bowling_phrases() {
  // indexed by BowlingFeature
  static const std::vector<std::string> phrases = {
      "bouncer", "good length", "yorker", "outside off", "middle stump", "leg stump",
      "googly",  "swinging",    "quick",  "slower ball", "angling in",  "moving away",
  };
  return phrases;
}

namespace {

const std::vector<WeightedPhrase>& default_outcomes() {
  static const std::vector<WeightedPhrase> outcomes = {
      {"no run", 0.50}, {"1 run", 0.25}, {"2 runs", 0.08}, {"3 runs", 0.02},
      {"FOUR", 0.10},   {"SIX", 0.02},   {"OUT", 0.03},
  };
  return outcomes;
}

SyntheticPlayer planted_player(const std::string& name, std::vector<std::string> opponents, std::size_t strength,
                               std::size_t weakness, double p_strength, double p_weakness, bool footwork,
                               bool shots = false) {
  const auto& bowl = planted_bowling_phrases();
  SyntheticPlayer p;
  p.name = name;
  p.opponents = std::move(opponents);
  p.outcomes = default_outcomes();
  for (const auto& b : bowl) p.bowling.push_back({b, 1.0 / static_cast<double>(bowl.size())});

  PhraseChannel response{"response", {}};
  for (std::size_t j = 0; j < bowl.size(); ++j) {
    std::vector<WeightedPhrase> dist;
    if (j == strength) {
      const double rest = 1.0 - p_strength;
      dist = {{"drives", p_strength}, {"edged", rest / 3.0}, {"defends", rest * 2.0 / 3.0}};
    } else if (j == weakness) {
      const double rest = 1.0 - p_weakness;
      dist = {{"drives", rest / 3.0}, {"edged", p_weakness}, {"defends", rest * 2.0 / 3.0}};
    } else {
      dist = {{"drives", 0.25}, {"edged", 0.15}, {"defends", 0.60}};
    }
    response.tables.push_back({bowl[j], dist});
  }
  p.channels.push_back(std::move(response));

  if (footwork) {
    PhraseChannel feet{"footwork", {}};
    for (std::size_t j = 0; j < bowl.size(); ++j) {
      const double front = j == index(BowlingFeature::full) ? 0.85 : 0.45;
      feet.tables.push_back({bowl[j], {{"front foot", front}, {"back foot", 1.0 - front}}});
    }
    p.channels.push_back(std::move(feet));
  }

  if (shots) {
    static const std::vector<std::string> areas = {"third man", "point",      "long off",
                                                   "long on",   "square leg", "fine leg"};
    PhraseChannel shot{"shot", {}};
    for (std::size_t j = 0; j < bowl.size(); ++j) {
      std::vector<WeightedPhrase> dist;
      for (std::size_t a = 0; a < areas.size(); ++a) dist.push_back({areas[a], a == j % areas.size() ? 0.5 : 0.1});
      shot.tables.push_back({bowl[j], dist});
    }
    p.channels.push_back(std::move(shot));
  }
  return p;
}

}  // namespace

SyntheticSpec planted_spec(const PlantedOptions& o) {
  if (o.strength >= kNumBowling || o.weakness >= kNumBowling || o.strength == o.weakness)
    throw Error(ErrorCode::ParameterError, "planted strength and weakness must be distinct bowling features");
  SyntheticSpec spec;
  spec.filler = neutral_filler();
  spec.players.push_back(planted_player(o.batsman, {"Bowler A", "Bowler B", "Bowler C", "Bowler D"}, o.strength,
                                        o.weakness, o.strength_probability, o.weakness_probability,
                                        o.plant_footwork));
  return spec;
}

SyntheticSpec demo_spec() {
  static const std::vector<std::string> batsmen = {
      "Ashby", "Brandt", "Corrigan", "Dalby", "Ekwueme", "Fairley", "Gorton", "Hallam",
      "Ibbotson", "Jessop", "Kinnear", "Lathwell", "Mayne", "Northey", "Oakes", "Pelham",
  };
  static const std::vector<std::string> bowlers = {"Quarrie", "Rudd", "Stell", "Tovey", "Upjohn", "Voce"};

  SyntheticSpec spec;
  spec.filler = neutral_filler();
  spec.start = Date{2012, 1, 1};
  spec.span_days = 7 * 365;
  for (std::size_t k = 0; k < batsmen.size(); ++k) {
    // four strength groups so similar batsmen exist
    const std::size_t strength = (k % 4) * 3;        // short, off_line, spin, slow
    const std::size_t weakness = (k % 4) * 3 + 1 + (k / 4) % 2;
    spec.players.push_back(planted_player(batsmen[k], bowlers, strength, weakness, 0.8, 0.7, k % 2 == 0, true));
  }
  return spec;
}

}  // namespace cricrules
