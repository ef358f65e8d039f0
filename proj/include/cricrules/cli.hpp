#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cricrules/corpus.hpp"

namespace cricrules {

/// Every flag of the command-line tool. A JSON config file may set the same
/// fields (underscored names); flags given on the command line win.
struct RunConfig {
  std::string corpus;
  std::string lexicon;  // empty = built-in
  std::string out = "out";

  // filter tuple
  std::string player;
  std::string opponents = "ALL";  // comma-separated names or ALL
  std::string window = "career";
  std::string window_key;
  std::string from;  // YYYY-MM-DD, inclusive
  std::string to;
  std::string type = "batting";

  std::size_t dims = 2;
  std::size_t top_k = 3;
  double perplexity = 30.0;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  std::string mode = "profile";
  int window_days = kDefaultWindowDays;
  std::string players_file;
  double max_reject_rate = kDefaultMaxRejectRate;

  std::string polarity = "strength";
  std::string anchor = "beaten";
  std::string subset = "all";
  std::string scaling = "contribution";
  std::string points = "both";
  std::size_t records = 24000;  // demo corpus size
};

/// Filter tuple for `player` built from the config's filter fields.
/// Throws ParameterError for unknown window kinds, types or bad dates.
FilterTuple make_filter(const RunConfig& config, const std::string& player);

/// Lowercase ASCII alphanumerics; everything else becomes '_'.
std::string file_slug(std::string_view name);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

/// Entry point of the tool. Logs go to `log`; a failure prints one line
/// "error: <Code>: <message>" there and returns the matching exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& log);

}  // namespace cricrules
