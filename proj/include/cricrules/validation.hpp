#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "cricrules/ca.hpp"
#include "cricrules/corpus.hpp"
#include "cricrules/lexicon.hpp"

namespace cricrules {

/// Similarity transform mapping Y onto X: X ~ scale * Y * rotation + translation.
struct ProcrustesTransform {
  Eigen::MatrixXd rotation;     // d x d orthogonal, det +-1
  double scale = 1.0;
  Eigen::RowVectorXd translation;
  bool reflection = false;
};

struct ProcrustesFit {
  /// Symmetric statistic 1 - (sum of singular values)^2 after centring and
  /// scaling both configurations to unit norm. In [0, 1]; 0 = same shape.
  double delta_sq = 0.0;
  /// Residual sum of squares of the fitted transform in original units.
  double raw_residual = 0.0;
  ProcrustesTransform transform;
};

/// Least-squares superimposition of Y onto X (rows correspond). Throws
/// ConfigurationError for N < 2, mismatched shapes or a zero-size configuration.
ProcrustesFit procrustes(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

enum class ConfigurationPoints { both, rows, columns };

std::optional<ConfigurationPoints> parse_configuration_points(std::string_view s);
std::string_view name(ConfigurationPoints p);

/// Labelled biplot configuration: principal coordinates in the first `dims`
/// dimensions, zero-filled where the analysis retained fewer.
struct Configuration {
  std::vector<std::string> labels;
  Eigen::MatrixXd points;
};

Configuration configuration(const CAResult& ca, std::size_t dims, ConfigurationPoints which);

struct ValidationOptions {
  int window_days = kDefaultWindowDays;
  std::size_t dims = 2;
  ConfigurationPoints points = ConfigurationPoints::both;
};

struct ProcrustesReport {
  std::string player;
  std::size_t balls_train = 0;
  std::size_t balls_test = 0;
  std::size_t common_features = 0;
  std::size_t dims = 2;
  ProcrustesFit fit;
};

/// Holdout validation: CA on the training and test halves, configurations
/// aligned by feature label, then Procrustes of test onto train.
ProcrustesReport validate_records(const std::string& player, std::span<const CommentaryRecord> records,
                                  const FeatureLexicon& lex, const ValidationOptions& options = {});

ProcrustesReport validate_player(const CorpusStore& store, const FilterTuple& filter, const FeatureLexicon& lex,
                                 const ValidationOptions& options = {});

nlohmann::json to_json(const ProcrustesReport& report);

/// Header plus one row per report: player, balls_train, balls_test, delta_sq.
std::string reports_csv(const std::vector<ProcrustesReport>& reports);

}  // namespace cricrules
