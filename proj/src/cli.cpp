#include "cricrules/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <unistd.h>

#include "cricrules/ca.hpp"
#include "cricrules/confrontation.hpp"
#include "cricrules/error.hpp"
#include "cricrules/json_util.hpp"
#include "cricrules/lexicon.hpp"
#include "cricrules/report.hpp"
#include "cricrules/rules.hpp"
#include "cricrules/similarity.hpp"
#include "cricrules/synthetic.hpp"
#include "cricrules/validation.hpp"

namespace cricrules {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Reads {"flag_name": value} objects. Keys use underscores; flags use dashes.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConfigError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      CLI::ConfigItem item;
      item.name = key;
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      if (value.is_string()) {
        item.inputs = {value.get<std::string>()};
      } else if (value.is_array()) {
        // a list of opponents is the only array-valued field
        std::string joined;
        for (const auto& v : value) {
          if (!joined.empty()) joined += ',';
          joined += v.is_string() ? v.get<std::string>() : v.dump();
        }
        item.inputs = {joined};
      } else {
        item.inputs = {value.dump()};
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

std::vector<std::string> split_csv_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!normalize_name(part).empty()) out.push_back(part);
  }
  return out;
}

Date parse_date_flag(const std::string& s, const char* flag) {
  auto d = Date::parse(s);
  if (!d) throw Error(ErrorCode::ParameterError, std::string(flag) + " must be YYYY-MM-DD, got '" + s + "'");
  return *d;
}

Role parse_role(const std::string& s) {
  if (s == "batting") return Role::batting;
  if (s == "bowling") return Role::bowling;
  throw Error(ErrorCode::ParameterError, "--type must be batting or bowling, got '" + s + "'");
}

PlayerRole player_role(Role r) { return r == Role::batting ? PlayerRole::batsman : PlayerRole::bowler; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

class Session {
 public:
  Session(const RunConfig& config, std::ostream& log) : config_(config), log_(log) {}

  const RunConfig& config() const { return config_; }
  std::ostream& log() { return log_; }

  const FeatureLexicon& lexicon() {
    if (config_.lexicon.empty()) return FeatureLexicon::builtin();
    if (!lexicon_) lexicon_ = FeatureLexicon::load(config_.lexicon);
    return *lexicon_;
  }

  const CorpusStore& store() {
    if (store_) return *store_;
    if (config_.corpus.empty()) throw Error(ErrorCode::ParameterError, "--corpus is required");
    store_ = ingest_file(config_.corpus);
    check_ingest(*store_);
    return *store_;
  }

  void use_store(CorpusStore store) { store_ = std::move(store); }

  void check_ingest(const CorpusStore& s) {
    const auto& report = s.report();
    if (report.lines_read == report.blank_lines)
      throw Error(ErrorCode::EmptyCorpus, "corpus '" + config_.corpus + "' has no records");
    if (report.exceeds(config_.max_reject_rate)) {
      std::ostringstream msg;
      msg << report.rejects.size() << " of " << report.lines_read - report.blank_lines
          << " lines rejected, above the limit of " << config_.max_reject_rate * 100.0 << "%";
      if (!report.rejects.empty())
        msg << " (first: line " << report.rejects.front().line << ": " << report.rejects.front().reason << ")";
      throw Error(ErrorCode::RejectRateExceeded, msg.str());
    }
    if (s.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus '" + config_.corpus + "' has no valid records");
  }

  fs::path out_dir() {
    fs::path p(config_.out);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + p.string() + "': " + ec.message());
    return p;
  }

  void write(const fs::path& path, const std::string& content) {
    if (!config_.corpus.empty()) {
      std::error_code ec;
      if (fs::exists(path, ec) && fs::equivalent(path, config_.corpus, ec))
        throw Error(ErrorCode::ParameterError, "refusing to overwrite the input corpus '" + config_.corpus + "'");
    }
    write_atomic(path.string(), content);
    log_ << "info: wrote " << path.string() << "\n";
  }

  std::vector<std::string> roster(Role role) {
    if (!config_.players_file.empty()) {
      std::ifstream in(config_.players_file);
      if (!in) throw Error(ErrorCode::IoError, "cannot open players file '" + config_.players_file + "'");
      std::vector<std::string> out;
      std::string line;
      while (std::getline(in, line)) {
        auto n = normalize_name(line);
        if (n.empty() || n.front() == '#') continue;
        out.push_back(line.substr(line.find_first_not_of(" \t")));
        while (!out.back().empty() && std::isspace(static_cast<unsigned char>(out.back().back()))) out.back().pop_back();
      }
      if (out.empty()) throw Error(ErrorCode::ParameterError, "players file '" + config_.players_file + "' is empty");
      return out;
    }
    if (!config_.player.empty()) return {config_.player};
    auto names = store().players(role);
    std::vector<std::string> out;
    for (const auto& n : names) out.push_back(store().display_name(n));
    return out;
  }

  FilterResult filtered(const std::string& player) {
    auto f = make_filter(config_, player);
    auto result = filter_records(store(), f);
    if (result.warning) log_ << "warning: " << result.message << "\n";
    return result;
  }

  ConfrontationMatrix matrix_for(const std::string& player) {
    auto result = filtered(player);
    auto m = build_matrix(result.records, lexicon());
    m.filter = make_filter(config_, player);
    return m;
  }

 private:
  const RunConfig& config_;
  std::ostream& log_;
  std::optional<FeatureLexicon> lexicon_;
  std::optional<CorpusStore> store_;
};

std::string require_player(const RunConfig& c) {
  if (c.player.empty()) throw Error(ErrorCode::ParameterError, "--player is required");
  return c.player;
}

std::string matrix_summary(const ConfrontationMatrix& m) {
  std::ostringstream os;
  os << "records used " << m.records_used << ", skipped " << m.records_skipped() << " (unknown outcome "
     << m.skipped_unknown_outcome << ", no bowling feature " << m.skipped_no_bowling << "), total count " << sum(m);
  return os.str();
}

// ---- commands --------------------------------------------------------------

void cmd_ingest(Session& s) {
  const auto& c = s.config();
  if (c.corpus.empty()) throw Error(ErrorCode::ParameterError, "--corpus is required");
  auto store = ingest_file(c.corpus);
  auto dir = s.out_dir();
  // the report is written even when the reject rate aborts the command
  s.write(dir / "ingest_report.json", dump(store.report().to_json()));
  s.log() << store.report().summary();
  s.check_ingest(store);
  std::ostringstream os;
  serialize(store, os);
  s.write(dir / "corpus.jsonl", os.str());
}

void write_matrix(Session& s, const fs::path& dir, const ConfrontationMatrix& m) {
  s.write(dir / "matrix.csv", to_csv(m));
  s.write(dir / "matrix.json", dump(to_json(m)));
}

void cmd_matrix(Session& s) {
  const auto player = require_player(s.config());
  auto m = s.matrix_for(player);
  s.log() << "info: " << matrix_summary(m) << "\n";
  write_matrix(s, s.out_dir(), m);
  if (sum(m) == 0)
    throw Error(ErrorCode::EmptyMatrix, "confrontation matrix for '" + player + "' is empty");
}

json rules_document(const CAResult& ca, const std::string& player, Role type, const RunConfig& c,
                    std::vector<Rule>& all, std::ostream& log) {
  const auto role = player_role(type);
  auto strength = strength_rules(ca, player, role, c.top_k, c.dims);
  auto weakness = weakness_rules(ca, player, role, c.top_k, c.dims);
  json doc = {{"player", player},
              {"role", std::string(name(role))},
              {"dims", c.dims},
              {"retained_dims", ca.dims()},
              {"rule_budget", rule_budget(ca)},
              {"strength", to_json(strength)},
              {"weakness", to_json(weakness)}};
  all.insert(all.end(), strength.begin(), strength.end());
  all.insert(all.end(), weakness.begin(), weakness.end());
  json aspects = json::object();
  if (role == PlayerRole::batsman) {
    for (Aspect a : {Aspect::outcome, Aspect::shotarea, Aspect::footwork}) {
      try {
        auto rules = aspect_rules(ca, player, a, c.top_k, c.dims);
        aspects[std::string(name(a))] = to_json(rules);
        all.insert(all.end(), rules.begin(), rules.end());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FeatureUnavailable) throw;
        log << "warning: " << e.what() << "\n";
        aspects[std::string(name(a))] = json::array();
      }
    }
  }
  doc["aspects"] = aspects;
  return doc;
}

std::string rules_text(const std::vector<Rule>& rules) {
  std::ostringstream os;
  for (const auto& r : rules) {
    os << name(r.polarity) << ' ' << name(r.batting_feature) << " #" << r.rank << ": " << r.sentence() << '\n';
  }
  return os.str();
}

void write_rules(Session& s, const fs::path& dir, const ConfrontationMatrix& m, const std::string& player) {
  const auto& c = s.config();
  auto ca = run_ca(m);
  s.write(dir / "ca.json", dump(to_json(ca)));
  std::vector<Rule> all;
  auto doc = rules_document(ca, player, parse_role(c.type), c, all, s.log());
  s.write(dir / "rules.json", dump(doc));
  s.write(dir / "rules.txt", rules_text(all));
}

void cmd_rules(Session& s) {
  const auto player = require_player(s.config());
  auto m = s.matrix_for(player);
  s.log() << "info: " << matrix_summary(m) << "\n";
  write_rules(s, s.out_dir(), m, s.store().display_name(player));
}

std::optional<std::set<BattingFeature>> subset_rows(const std::string& subset) {
  if (subset == "full") return std::nullopt;
  if (subset == "response")
    return std::set<BattingFeature>{BattingFeature::beaten, BattingFeature::defended, BattingFeature::attacked};
  auto aspect = parse_aspect(subset);
  if (!aspect)
    throw Error(ErrorCode::ParameterError,
                "--subset must be full, response, outcome, shotarea, footwork or all; got '" + subset + "'");
  auto group = aspect_group(*aspect);
  return std::set<BattingFeature>(group.begin(), group.end());
}

BiplotScaling parse_scaling(const std::string& s) {
  if (s == "contribution") return BiplotScaling::contribution;
  if (s == "symmetric") return BiplotScaling::symmetric;
  throw Error(ErrorCode::ParameterError, "--scaling must be contribution or symmetric, got '" + s + "'");
}

void write_biplots(Session& s, const fs::path& dir, const ConfrontationMatrix& m, const std::string& player) {
  const auto& c = s.config();
  const auto scaling = parse_scaling(c.scaling);
  const bool all = c.subset == "all";
  const std::vector<std::string> subsets =
      all ? std::vector<std::string>{"full", "response", "outcome", "shotarea", "footwork"}
          : std::vector<std::string>{c.subset};
  for (const auto& sub : subsets) {
    auto rows = subset_rows(sub);
    PlotStyle style;
    style.title = player + (sub == "full" ? "" : " (" + sub + ")");
    try {
      const CAResult ca = rows ? subset_ca(m, *rows) : run_ca(m);
      auto svg = render_biplot(ca, std::nullopt, style, scaling);
      s.write(dir / (sub == "full" ? std::string("biplot.svg") : "biplot_" + sub + ".svg"), svg);
    } catch (const Error& e) {
      // with --subset all, a subset the data cannot support is skipped
      if (!all || sub == "full" || exit_status(e.code()) != 4) throw;
      s.log() << "warning: skipped " << sub << " biplot: " << e.what() << "\n";
    }
  }
}

void cmd_biplot(Session& s) {
  const auto player = require_player(s.config());
  auto m = s.matrix_for(player);
  write_biplots(s, s.out_dir(), m, s.store().display_name(player));
}

Polarity parse_polarity(const std::string& p) {
  if (p == "strength") return Polarity::strength;
  if (p == "weakness") return Polarity::weakness;
  throw Error(ErrorCode::ParameterError, "--polarity must be strength or weakness, got '" + p + "'");
}

TsneParams tsne_params(const RunConfig& c) {
  TsneParams p;
  p.perplexity = c.perplexity;
  p.iterations = c.iterations;
  p.seed = c.seed;
  return p;
}

void similar_for(Session& s, const fs::path& dir, Polarity polarity) {
  const auto& c = s.config();
  const Role type = parse_role(c.type);
  auto mode = parse_vector_mode(c.mode);
  if (!mode) throw Error(ErrorCode::ParameterError, "--mode must be profile or coordinate, got '" + c.mode + "'");

  std::vector<PlayerVector> vectors;
  json skipped = json::array();
  for (const auto& player : s.roster(type)) {
    try {
      auto m = s.matrix_for(player);
      auto ca = run_ca(m);
      vectors.push_back(
          player_vector(m, ca, s.store().display_name(player), player_role(type), polarity, *mode, c.dims));
    } catch (const Error& e) {
      if (exit_status(e.code()) != 4) throw;
      skipped.push_back({{"player", player}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}});
      s.log() << "warning: skipped " << player << ": " << e.what() << "\n";
    }
  }
  auto emb = embed_tsne(vectors, tsne_params(c));
  s.log() << "info: t-SNE over " << vectors.size() << " players, final KL " << emb.final_kl << "\n";
  const std::string stem = "similar_" + std::string(name(polarity));
  PlotStyle style;
  style.title = std::string(polarity == Polarity::strength ? "Strength" : "Weakness") + " rule similarity";
  s.write(dir / (stem + ".csv"), embedding_csv(vectors, emb));
  s.write(dir / (stem + ".svg"), render_scatter(emb, style));
  json meta = {{"players", vectors.size()},
               {"skipped", skipped},
               {"perplexity", c.perplexity},
               {"iterations", c.iterations},
               {"seed", c.seed},
               {"mode", std::string(name(*mode))},
               {"final_kl", round12(emb.final_kl)}};
  s.write(dir / (stem + ".json"), dump(meta));
}

void cmd_similar(Session& s) { similar_for(s, s.out_dir(), parse_polarity(s.config().polarity)); }

void validate_roster(Session& s, const fs::path& dir) {
  const auto& c = s.config();
  const Role type = parse_role(c.type);
  ValidationOptions opts;
  opts.window_days = c.window_days;
  opts.dims = c.dims;
  auto points = parse_configuration_points(c.points);
  if (!points) throw Error(ErrorCode::ParameterError, "--points must be both, rows or columns, got '" + c.points + "'");
  opts.points = *points;

  const auto roster = s.roster(type);
  const bool batch = roster.size() > 1 || !c.players_file.empty();
  std::vector<ProcrustesReport> reports;
  json details = json::array();
  json skipped = json::array();
  for (const auto& player : roster) {
    try {
      auto result = s.filtered(player);
      auto report = validate_records(s.store().display_name(player), result.records, s.lexicon(), opts);
      details.push_back(to_json(report));
      reports.push_back(std::move(report));
    } catch (const Error& e) {
      if (!batch || exit_status(e.code()) == 2) throw;
      skipped.push_back({{"player", player}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}});
      s.log() << "warning: skipped " << player << ": " << e.what() << "\n";
    }
  }
  s.write(dir / "validation.csv", reports_csv(reports));
  s.write(dir / "validation.json", dump({{"reports", details}, {"skipped", skipped}}));
}

void cmd_validate(Session& s) { validate_roster(s, s.out_dir()); }

BattingFeature parse_anchor(const std::string& a) {
  if (a == "attacked") return BattingFeature::attacked;
  if (a == "beaten") return BattingFeature::beaten;
  throw Error(ErrorCode::ParameterError, "--anchor must be attacked or beaten, got '" + a + "'");
}

std::string wordfreq_csv(const std::vector<std::pair<std::string, std::size_t>>& rows) {
  std::string out = "bigram,count\n";
  for (const auto& [bigram, count] : rows) out += bigram + "," + std::to_string(count) + "\n";
  return out;
}

void cmd_wordfreq(Session& s) {
  const auto& c = s.config();
  const auto anchor = parse_anchor(c.anchor);
  std::vector<CommentaryRecord> records;
  if (c.player.empty()) {
    records = s.store().records();
  } else {
    records = s.filtered(c.player).records;
  }
  auto rows = word_frequency_report(records, anchor, s.lexicon(), c.top_k);
  s.write(s.out_dir() / ("wordfreq_" + std::string(name(anchor)) + ".csv"), wordfreq_csv(rows));
}

void cmd_demo(Session& s, RunConfig& c) {
  auto dir = s.out_dir();
  const auto spec = demo_spec();
  const auto records = generate_synthetic(spec, c.records, c.seed);
  std::string corpus;
  for (const auto& r : records) corpus += serialize(r) + "\n";
  s.write(dir / "corpus.jsonl", corpus);
  s.write(dir / "demo_spec.json", dump(spec.to_json()));

  c.corpus = (dir / "corpus.jsonl").string();
  auto store = ingest_file(c.corpus);
  s.check_ingest(store);
  s.write(dir / "ingest_report.json", dump(store.report().to_json()));
  s.use_store(std::move(store));

  // 16 batsmen: the default perplexity of 30 is infeasible
  if (c.perplexity > 5.0) c.perplexity = 5.0;

  const auto roster = s.roster(Role::batting);
  for (const auto& player : roster) {
    const auto pdir = dir / "players" / file_slug(player);
    fs::create_directories(pdir);
    auto m = s.matrix_for(player);
    write_matrix(s, pdir, m);
    write_rules(s, pdir, m, player);
    write_biplots(s, pdir, m, player);
  }
  similar_for(s, dir, Polarity::strength);
  similar_for(s, dir, Polarity::weakness);
  validate_roster(s, dir);
  for (BattingFeature anchor : {BattingFeature::attacked, BattingFeature::beaten}) {
    auto rows = word_frequency_report(s.store().records(), anchor, s.lexicon(), 20);
    s.write(dir / ("wordfreq_" + std::string(name(anchor)) + ".csv"), wordfreq_csv(rows));
  }
}

void add_flags(CLI::App& app, RunConfig& c) {
  app.add_option("--corpus", c.corpus, "JSONL commentary corpus");
  app.add_option("--lexicon", c.lexicon, "Feature lexicon JSON (default: built-in)");
  app.add_option("--out", c.out, "Output directory")->capture_default_str();
  app.add_option("--player", c.player, "Player to analyse");
  app.add_option("--opponents", c.opponents, "Comma-separated opponent names, or ALL")->capture_default_str();
  app.add_option("--window", c.window, "session, day, innings, match, series or career")->capture_default_str();
  app.add_option("--window-key", c.window_key,
                 "Unit for non-career windows: match_id, series_id, match_id/innings, match_id/day or "
                 "match_id/day.session");
  app.add_option("--from", c.from, "First date to keep, YYYY-MM-DD");
  app.add_option("--to", c.to, "Last date to keep, YYYY-MM-DD");
  app.add_option("--type", c.type, "Player's role in the analysis: batting or bowling")->capture_default_str();
  app.add_option("--dims", c.dims, "CA dimensions used for rule scores")->capture_default_str();
  app.add_option("--top-k", c.top_k, "Rules per anchor; bigrams for wordfreq")->capture_default_str();
  app.add_option("--perplexity", c.perplexity, "t-SNE perplexity")->capture_default_str();
  app.add_option("--iterations", c.iterations, "t-SNE iterations")->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for t-SNE and the demo corpus")->capture_default_str();
  app.add_option("--mode", c.mode, "Player vector mode: profile or coordinate")->capture_default_str();
  app.add_option("--window-days", c.window_days, "Holdout test window in days")->capture_default_str();
  app.add_option("--players-file", c.players_file, "Roster file, one player per line");
  app.add_option("--max-reject-rate", c.max_reject_rate, "Largest tolerated share of rejected lines")
      ->capture_default_str();
  app.add_option("--polarity", c.polarity, "similar: strength or weakness")->capture_default_str();
  app.add_option("--anchor", c.anchor, "wordfreq: attacked or beaten")->capture_default_str();
  app.add_option("--subset", c.subset, "biplot: full, response, outcome, shotarea, footwork or all")
      ->capture_default_str();
  app.add_option("--scaling", c.scaling, "biplot: contribution or symmetric")->capture_default_str();
  app.add_option("--points", c.points, "validate: both, rows or columns")->capture_default_str();
  app.add_option("--records", c.records, "demo: number of generated deliveries")->capture_default_str();
}

}  // namespace

FilterTuple make_filter(const RunConfig& c, const std::string& player) {
  FilterTuple f;
  f.player = player;
  f.type = parse_role(c.type);
  if (normalize_name(c.opponents) != "all") {
    auto names = split_csv_names(c.opponents);
    if (names.empty()) throw Error(ErrorCode::ParameterError, "--opponents lists no names");
    f.opponents = std::move(names);
  }
  auto kind = parse_window_kind(c.window);
  if (!kind) throw Error(ErrorCode::ParameterError, "unknown --window '" + c.window + "'");
  f.window.kind = *kind;
  f.window.key = c.window_key;
  if (!c.from.empty() || !c.to.empty()) {
    DateRange r{Date{1, 1, 1}, Date{9999, 12, 31}};
    if (!c.from.empty()) r.start = parse_date_flag(c.from, "--from");
    if (!c.to.empty()) r.end = parse_date_flag(c.to, "--to");
    f.window.range = r;
  }
  f.validate();
  return f;
}

std::string file_slug(std::string_view name) {
  std::string out;
  for (char ch : name) {
    const auto u = static_cast<unsigned char>(ch);
    out += std::isalnum(u) ? static_cast<char>(std::tolower(u)) : '_';
  }
  return out.empty() ? "_" : out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write to '" + tmp + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into place at '" + path + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& log) {
  RunConfig config;
  CLI::App app{"Strength and weakness rules from ball-by-ball cricket commentary", "cricrules"};
  app.set_config("--config", "", "JSON file with the same fields as the flags (underscored names)");
  app.config_formatter(std::make_shared<JsonConfig>());
  add_flags(app, config);
  app.require_subcommand(1, 1);

  using Command = std::function<void(Session&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const char* cmd, const char* help, Command fn) {
    auto* sub = app.add_subcommand(cmd, help);
    sub->fallthrough();
    commands.emplace_back(sub, std::move(fn));
  };
  add("ingest", "Validate a corpus; write the normalized corpus and an ingest report", cmd_ingest);
  add("matrix", "Build the confrontation matrix for --player", cmd_matrix);
  add("rules", "Strength, weakness and aspect rules for --player", cmd_rules);
  add("biplot", "Contribution biplots (full and feature subsets) for --player", cmd_biplot);
  add("similar", "t-SNE map of all players' first strength or weakness rule", cmd_similar);
  add("validate", "Holdout Procrustes validation for --player or a roster", cmd_validate);
  add("wordfreq", "Bigram frequencies in commentary hitting --anchor", cmd_wordfreq);
  add("demo", "Generate the synthetic demo corpus and run the whole pipeline", [&](Session& s) {
    cmd_demo(s, config);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    log << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    log << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const bool config_problem = dynamic_cast<const CLI::ConfigError*>(&e) != nullptr ||
                                dynamic_cast<const CLI::FileError*>(&e) != nullptr;
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    log << "error: " << (config_problem ? "ConfigError" : "ParameterError") << ": " << msg << "\n";
    return 2;
  }

  Session session(config, log);
  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) fn(session);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    log << "error: " << to_string(e.code()) << ": " << msg << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    log << "error: IoError: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace cricrules
