#include "cricrules/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cricrules/error.hpp"

namespace cricrules {

using nlohmann::json;

// Generated from data/default_lexicon.json at configure time.
extern const char* const kBuiltinLexiconJson;

namespace {

bool is_token_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\''; }

void flush(std::string& cur, std::vector<std::string>& out) {
  // apostrophes only survive inside a token
  auto first = cur.find_first_not_of('\'');
  if (first != std::string::npos) {
    auto last = cur.find_last_not_of('\'');
    out.push_back(cur.substr(first, last - first + 1));
  }
  cur.clear();
}

std::string trim_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto first = out.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  auto last = out.find_last_not_of(" \t");
  return out.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    // U+2019 RIGHT SINGLE QUOTATION MARK is the usual apostrophe in scraped text
    if (text.substr(i, 3) == "\xE2\x80\x99") {
      cur.push_back('\'');
      i += 2;
      continue;
    }
    if (is_token_char(c)) {
      cur.push_back(c);
    } else {
      flush(cur, out);
    }
  }
  flush(cur, out);
  return out;
}

std::vector<std::string> extract_ngrams(std::span<const std::string> tokens) {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  if (tokens.size() < 2) return out;
  out.reserve(2 * tokens.size() - 1);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) out.push_back(tokens[i] + ' ' + tokens[i + 1]);
  return out;
}

// ---------------------------------------------------------------------------

FeatureLexicon FeatureLexicon::from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::LexiconError, "lexicon must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!parse_batting_feature(key) && !parse_bowling_feature(key))
      throw Error(ErrorCode::LexiconError, "unknown feature '" + key + "'");

  auto read_phrases = [&](std::string_view feature) {
    auto it = doc.find(std::string(feature));
    if (it == doc.end())
      throw Error(ErrorCode::LexiconError, "feature '" + std::string(feature) + "' is missing");
    if (!it->is_array())
      throw Error(ErrorCode::LexiconError, "feature '" + std::string(feature) + "' must map to an array");
    std::vector<std::string> phrases;
    for (const auto& p : *it) {
      if (!p.is_string())
        throw Error(ErrorCode::LexiconError, "feature '" + std::string(feature) + "' has a non-string phrase");
      const auto& s = p.get_ref<const std::string&>();
      auto tokens = tokenize(s);
      std::string canonical;
      for (const auto& t : tokens) canonical += (canonical.empty() ? "" : " ") + t;
      if (tokens.empty() || tokens.size() > 2 || canonical != s)
        throw Error(ErrorCode::LexiconError, "phrase '" + s + "' of feature '" + std::string(feature) +
                                                 "' must be 1-2 lowercase tokens separated by one space");
      if (std::find(phrases.begin(), phrases.end(), s) == phrases.end()) phrases.push_back(s);
    }
    return phrases;
  };

  FeatureLexicon lex;
  for (std::size_t i = 0; i < kNumBatting; ++i) {
    auto f = batting_at(i);
    lex.batting_[i] = read_phrases(name(f));
    if (is_outcome(f) && !lex.batting_[i].empty())
      throw Error(ErrorCode::LexiconError, "outcome feature '" + std::string(name(f)) +
                                               "' must have no phrases; outcomes come from the structured head");
    for (const auto& p : lex.batting_[i]) {
      auto [it, inserted] = lex.batting_index_.emplace(p, f);
      if (!inserted)
        throw Error(ErrorCode::LexiconError, "phrase '" + p + "' maps to both batting features '" +
                                                 std::string(name(it->second)) + "' and '" +
                                                 std::string(name(f)) + "'");
    }
  }
  for (std::size_t j = 0; j < kNumBowling; ++j) {
    auto f = bowling_at(j);
    lex.bowling_[j] = read_phrases(name(f));
    for (const auto& p : lex.bowling_[j]) {
      auto [it, inserted] = lex.bowling_index_.emplace(p, f);
      if (!inserted)
        throw Error(ErrorCode::LexiconError, "phrase '" + p + "' maps to both bowling features '" +
                                                 std::string(name(it->second)) + "' and '" +
                                                 std::string(name(f)) + "'");
    }
  }
  return lex;
}

FeatureLexicon FeatureLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open lexicon '" + path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::LexiconError, "lexicon '" + path + "' is not valid JSON");
  return from_json(doc);
}

const FeatureLexicon& FeatureLexicon::builtin() {
  static const FeatureLexicon lex = from_json(json::parse(kBuiltinLexiconJson));
  return lex;
}

std::optional<BattingFeature> FeatureLexicon::batting_for(std::string_view phrase) const {
  auto it = batting_index_.find(std::string(phrase));
  if (it == batting_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<BowlingFeature> FeatureLexicon::bowling_for(std::string_view phrase) const {
  auto it = bowling_index_.find(std::string(phrase));
  if (it == bowling_index_.end()) return std::nullopt;
  return it->second;
}

json FeatureLexicon::to_json() const {
  json doc = json::object();
  for (std::size_t i = 0; i < kNumBatting; ++i) doc[std::string(kBattingNames[i])] = batting_[i];
  for (std::size_t j = 0; j < kNumBowling; ++j) doc[std::string(kBowlingNames[j])] = bowling_[j];
  return doc;
}

MatchedFeatures match_features(std::span<const std::string> ngrams, const FeatureLexicon& lex) {
  MatchedFeatures m;
  for (const auto& g : ngrams) {
    if (auto f = lex.batting_for(g)) m.batting.set(index(*f));
    if (auto f = lex.bowling_for(g)) m.bowling.set(index(*f));
  }
  return m;
}

MatchedFeatures match_text(std::string_view text, const FeatureLexicon& lex) {
  auto tokens = tokenize(text);
  auto ngrams = extract_ngrams(tokens);
  return match_features(ngrams, lex);
}

// ---------------------------------------------------------------------------

std::optional<BattingFeature> try_parse_outcome(std::string_view outcome_token) {
  const std::string t = trim_lower(outcome_token);
  if (t == "no run" || t == "no runs" || t == "dot" || t == "dot ball") return BattingFeature::run0;
  if (t == "four") return BattingFeature::run4;
  if (t == "six") return BattingFeature::run6plus;
  if (t == "out" || t == "wicket" || t == "w" || t == "caught" || t == "bowled" || t == "lbw" ||
      t == "stumped" || t == "run out" || t == "hit wicket")
    return BattingFeature::out;

  // "<n> run" / "<n> runs"
  auto space = t.find(' ');
  if (space == std::string::npos) return std::nullopt;
  auto unit = std::string_view(t).substr(space + 1);
  if (unit != "run" && unit != "runs") return std::nullopt;
  int n = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + space, n);
  if (ec != std::errc{} || ptr != t.data() + space || n < 0) return std::nullopt;
  if (n >= 6) return BattingFeature::run6plus;
  return batting_at(index(BattingFeature::run0) + static_cast<std::size_t>(n));
}

BattingFeature parse_outcome(std::string_view outcome_token) {
  if (auto f = try_parse_outcome(outcome_token)) return *f;
  throw UnknownOutcomeError(std::string(outcome_token));
}

}  // namespace cricrules
