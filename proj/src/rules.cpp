#include "cricrules/rules.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "cricrules/error.hpp"
#include "cricrules/json_util.hpp"

namespace cricrules {

std::string_view name(Polarity p) {
  switch (p) {
    case Polarity::strength: return "strength";
    case Polarity::weakness: return "weakness";
    case Polarity::aspect: return "aspect";
  }
  return "";
}

std::string_view name(PlayerRole r) { return r == PlayerRole::batsman ? "batsman" : "bowler"; }

namespace {

std::string_view verb(BattingFeature f) {
  switch (f) {
    case BattingFeature::attacked: return "attacks";
    case BattingFeature::beaten: return "gets beaten on";
    case BattingFeature::defended: return "defends";
    case BattingFeature::out: return "gets out on";
    case BattingFeature::run0: return "scores no run on";
    case BattingFeature::run6plus: return "scores six or more on";
    case BattingFeature::front_foot: return "plays on the front foot to";
    case BattingFeature::back_foot: return "plays on the back foot to";
    default: return "";
  }
}

std::vector<Rule> wrap(const CAResult& ca, const std::string& player, PlayerRole role, Polarity polarity,
                       BattingFeature anchor, std::size_t k, std::size_t dims) {
  std::vector<Rule> out;
  if (k == 0) return out;
  auto scored = score_bowling_features(ca, anchor, dims);
  const std::size_t used = std::min(dims, ca.dims());
  for (std::size_t i = 0; i < std::min(k, scored.size()); ++i)
    out.push_back(Rule{player, polarity, role, anchor, scored[i].feature, scored[i].score, i + 1, used});
  return out;
}

}  // namespace

std::string Rule::sentence() const {
  std::string subject = player.empty() ? "Player" : player;
  auto v = verb(batting_feature);
  std::string gl(gloss(bowling_feature));
  if (role == PlayerRole::bowler) {
    // bowler rules read from the opponent's batting feature
    if (batting_feature == BattingFeature::beaten) return subject + " beats batsmen with " + gl;
    if (batting_feature == BattingFeature::attacked) return subject + " gets attacked on " + gl;
  }
  if (!v.empty()) return subject + " " + std::string(v) + " " + gl;
  std::string f(name(batting_feature));
  if (f.starts_with("run")) {
    const auto runs = f.substr(3);
    return subject + " scores " + runs + (runs == "1" ? " run on " : " runs on ") + gl;
  }
  std::replace(f.begin(), f.end(), '_', ' ');
  return subject + " plays shots to the " + f + " area on " + gl;
}

std::vector<ScoredFeature> score_bowling_features(const CAResult& ca, BattingFeature anchor, std::size_t dims) {
  if (dims == 0) throw Error(ErrorCode::ParameterError, "dims must be at least 1");
  auto row = ca.row_of(anchor);
  if (!row)
    throw Error(ErrorCode::FeatureUnavailable,
                "batting feature '" + std::string(name(anchor)) + "' has no counts in this analysis");
  const auto used = static_cast<Eigen::Index>(std::min(dims, ca.dims()));
  const auto i = static_cast<Eigen::Index>(*row);

  std::vector<ScoredFeature> out;
  out.reserve(ca.cols.size());
  for (std::size_t j = 0; j < ca.cols.size(); ++j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < used; ++k)
      s += ca.row_principal(i, k) * ca.col_principal(static_cast<Eigen::Index>(j), k);
    out.push_back({ca.cols[j], s});
  }
  // Scores are compared on a grid of kTieTolerance * max|score| so that
  // features with identical profiles, whose scores differ only by rounding,
  // tie and keep enumeration order.
  double scale = 0.0;
  for (const auto& f : out) scale = std::max(scale, std::abs(f.score));
  std::vector<std::pair<long long, ScoredFeature>> keyed;
  keyed.reserve(out.size());
  for (const auto& f : out)
    keyed.emplace_back(scale > 0.0 ? std::llround(f.score / (scale * kTieTolerance)) : 0LL, f);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = keyed[k].second;
  return out;
}

BattingFeature strength_anchor(PlayerRole role) {
  return role == PlayerRole::batsman ? BattingFeature::attacked : BattingFeature::beaten;
}

BattingFeature weakness_anchor(PlayerRole role) {
  return role == PlayerRole::batsman ? BattingFeature::beaten : BattingFeature::attacked;
}

std::vector<Rule> strength_rules(const CAResult& ca, const std::string& player, PlayerRole role,
                                 std::size_t k, std::size_t dims) {
  return wrap(ca, player, role, Polarity::strength, strength_anchor(role), k, dims);
}

std::vector<Rule> weakness_rules(const CAResult& ca, const std::string& player, PlayerRole role,
                                 std::size_t k, std::size_t dims) {
  return wrap(ca, player, role, Polarity::weakness, weakness_anchor(role), k, dims);
}

std::vector<Rule> aspect_rules(const CAResult& ca, const std::string& player, Aspect aspect, std::size_t k,
                               std::size_t dims) {
  std::vector<Rule> out;
  bool any = false;
  for (BattingFeature f : aspect_group(aspect)) {
    if (!ca.row_of(f)) continue;
    any = true;
    auto rules = wrap(ca, player, PlayerRole::batsman, Polarity::aspect, f, k, dims);
    out.insert(out.end(), rules.begin(), rules.end());
  }
  if (!any)
    throw Error(ErrorCode::FeatureUnavailable,
                "no feature of the '" + std::string(name(aspect)) + "' group has counts in this analysis");
  return out;
}

std::size_t rule_budget(const CAResult& ca) { return ca.rows.size() * ca.cols.size(); }

nlohmann::json to_json(const Rule& r) {
  return {{"player", r.player},
          {"polarity", name(r.polarity)},
          {"role", name(r.role)},
          {"batting_feature", name(r.batting_feature)},
          {"bowling_feature", name(r.bowling_feature)},
          {"score", round12(r.score)},
          {"rank", r.rank},
          {"dims_used", r.dims_used},
          {"text", r.sentence()}};
}

nlohmann::json to_json(const std::vector<Rule>& rules) {
  auto out = nlohmann::json::array();
  for (const auto& r : rules) out.push_back(to_json(r));
  return out;
}

}  // namespace cricrules
