#include "cricrules/validation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cricrules/confrontation.hpp"
#include "cricrules/error.hpp"
#include "cricrules/json_util.hpp"

namespace cricrules {

ProcrustesFit procrustes(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(ErrorCode::ConfigurationError, "configurations differ in shape");
  if (x.rows() < 2) throw Error(ErrorCode::ConfigurationError, "need at least two points");
  if (x.cols() < 1) throw Error(ErrorCode::ConfigurationError, "configurations have no dimensions");

  const Eigen::RowVectorXd mean_x = x.colwise().mean();
  const Eigen::RowVectorXd mean_y = y.colwise().mean();
  const Eigen::MatrixXd xc = x.rowwise() - mean_x;
  const Eigen::MatrixXd yc = y.rowwise() - mean_y;
  const double norm_x = xc.norm();
  const double norm_y = yc.norm();
  if (norm_x == 0.0 || norm_y == 0.0)
    throw Error(ErrorCode::ConfigurationError, "a configuration collapses to a single point");

  const Eigen::MatrixXd cross = (yc / norm_y).transpose() * (xc / norm_x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double trace = svd.singularValues().sum();

  ProcrustesFit fit;
  fit.delta_sq = std::clamp(1.0 - trace * trace, 0.0, 1.0);
  fit.transform.rotation = svd.matrixU() * svd.matrixV().transpose();
  fit.transform.scale = trace * norm_x / norm_y;
  fit.transform.translation = mean_x - fit.transform.scale * mean_y * fit.transform.rotation;
  fit.transform.reflection = fit.transform.rotation.determinant() < 0.0;
  fit.raw_residual = (xc - fit.transform.scale * yc * fit.transform.rotation).squaredNorm();
  return fit;
}

std::optional<ConfigurationPoints> parse_configuration_points(std::string_view s) {
  if (s == "both") return ConfigurationPoints::both;
  if (s == "rows") return ConfigurationPoints::rows;
  if (s == "columns") return ConfigurationPoints::columns;
  return std::nullopt;
}

std::string_view name(ConfigurationPoints p) {
  switch (p) {
    case ConfigurationPoints::both: return "both";
    case ConfigurationPoints::rows: return "rows";
    case ConfigurationPoints::columns: return "columns";
  }
  return "";
}

Configuration configuration(const CAResult& ca, std::size_t dims, ConfigurationPoints which) {
  const auto d = static_cast<Eigen::Index>(dims);
  const auto kept = std::min<Eigen::Index>(d, static_cast<Eigen::Index>(ca.dims()));
  const bool rows = which != ConfigurationPoints::columns;
  const bool cols = which != ConfigurationPoints::rows;
  const auto n = static_cast<Eigen::Index>((rows ? ca.rows.size() : 0) + (cols ? ca.cols.size() : 0));

  Configuration out;
  out.points = Eigen::MatrixXd::Zero(n, d);
  Eigen::Index at = 0;
  if (rows)
    for (std::size_t i = 0; i < ca.rows.size(); ++i, ++at) {
      out.labels.push_back("batting:" + std::string(name(ca.rows[i])));
      out.points.row(at).head(kept) = ca.row_principal.row(static_cast<Eigen::Index>(i)).head(kept);
    }
  if (cols)
    for (std::size_t j = 0; j < ca.cols.size(); ++j, ++at) {
      out.labels.push_back("bowling:" + std::string(name(ca.cols[j])));
      out.points.row(at).head(kept) = ca.col_principal.row(static_cast<Eigen::Index>(j)).head(kept);
    }
  return out;
}

ProcrustesReport validate_records(const std::string& player, std::span<const CommentaryRecord> records,
                                  const FeatureLexicon& lex, const ValidationOptions& options) {
  if (options.dims == 0) throw Error(ErrorCode::ParameterError, "dims must be at least 1");
  auto split = holdout_split(records, options.window_days);
  if (split.train.empty()) throw InsufficientDataError("train");
  if (split.test.empty()) throw InsufficientDataError("test");

  const auto train_ca = run_ca(build_matrix(split.train, lex));
  const auto test_ca = run_ca(build_matrix(split.test, lex));
  const auto train = configuration(train_ca, options.dims, options.points);
  const auto test = configuration(test_ca, options.dims, options.points);

  // align by label; drops may differ between the halves
  std::map<std::string, Eigen::Index> test_at;
  for (std::size_t i = 0; i < test.labels.size(); ++i) test_at[test.labels[i]] = static_cast<Eigen::Index>(i);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (std::size_t i = 0; i < train.labels.size(); ++i)
    if (auto it = test_at.find(train.labels[i]); it != test_at.end())
      pairs.emplace_back(static_cast<Eigen::Index>(i), it->second);
  if (pairs.size() < 3)
    throw Error(ErrorCode::DegenerateConfiguration,
                "only " + std::to_string(pairs.size()) + " features survive in both halves; need 3");

  const auto d = static_cast<Eigen::Index>(options.dims);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(pairs.size()), d);
  Eigen::MatrixXd y(static_cast<Eigen::Index>(pairs.size()), d);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    x.row(static_cast<Eigen::Index>(k)) = train.points.row(pairs[k].first);
    y.row(static_cast<Eigen::Index>(k)) = test.points.row(pairs[k].second);
  }

  ProcrustesReport report;
  report.player = player;
  report.balls_train = split.train.size();
  report.balls_test = split.test.size();
  report.common_features = pairs.size();
  report.dims = options.dims;
  try {
    report.fit = procrustes(x, y);
  } catch (const Error& e) {
    throw Error(ErrorCode::DegenerateConfiguration, e.what());
  }
  return report;
}

ProcrustesReport validate_player(const CorpusStore& store, const FilterTuple& filter, const FeatureLexicon& lex,
                                 const ValidationOptions& options) {
  auto filtered = filter_records(store, filter);
  return validate_records(store.display_name(filter.player), filtered.records, lex, options);
}

nlohmann::json to_json(const ProcrustesReport& r) {
  const auto& t = r.fit.transform;
  return {{"player", r.player},
          {"balls_train", r.balls_train},
          {"balls_test", r.balls_test},
          {"common_features", r.common_features},
          {"dims", r.dims},
          {"delta_sq", round12(r.fit.delta_sq)},
          {"raw_residual", round12(r.fit.raw_residual)},
          {"transform",
           {{"rotation", json_matrix(t.rotation)},
            {"scale", round12(t.scale)},
            {"translation", json_vector(t.translation.transpose())},
            {"reflection", t.reflection}}}};
}

std::string reports_csv(const std::vector<ProcrustesReport>& reports) {
  std::ostringstream os;
  os.precision(12);
  os << "player,balls_train,balls_test,delta_sq\n";
  for (const auto& r : reports)
    os << r.player << ',' << r.balls_train << ',' << r.balls_test << ',' << round12(r.fit.delta_sq) << '\n';
  return os.str();
}

}  // namespace cricrules
