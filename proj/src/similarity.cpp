#include "cricrules/similarity.hpp"

#include <cmath>
#include <sstream>

#include "cricrules/error.hpp"
#include "cricrules/json_util.hpp"
#include "cricrules/random.hpp"
#include "cricrules/tsne_kernels.hpp"

namespace cricrules {

std::string_view name(VectorMode m) { return m == VectorMode::profile ? "profile" : "coordinate"; }

std::optional<VectorMode> parse_vector_mode(std::string_view s) {
  if (s == "profile") return VectorMode::profile;
  if (s == "coordinate") return VectorMode::coordinate;
  return std::nullopt;
}

std::string PlayerVector::label() const { return player + " - " + std::string(name(top_bowling_feature)); }

PlayerVector player_vector(const ConfrontationMatrix& matrix, const CAResult& ca, const std::string& player,
                           PlayerRole role, Polarity polarity, VectorMode mode, std::size_t dims) {
  if (polarity == Polarity::aspect)
    throw Error(ErrorCode::ParameterError, "player vectors are built from strength or weakness rules");
  const BattingFeature anchor = polarity == Polarity::strength ? strength_anchor(role) : weakness_anchor(role);
  const auto ranked = score_bowling_features(ca, anchor, dims);

  PlayerVector v;
  v.player = player;
  v.role = role;
  v.polarity = polarity;
  v.mode = mode;
  v.top_bowling_feature = ranked.front().feature;
  const auto a = index(anchor);
  const auto b = index(v.top_bowling_feature);

  if (mode == VectorMode::profile) {
    const auto rows = row_sums(matrix);
    const auto cols = col_sums(matrix);
    v.values.reserve(kNumBowling + kNumBatting);
    for (std::size_t j = 0; j < kNumBowling; ++j)
      v.values.push_back(rows[a] > 0 ? static_cast<double>(matrix.counts[a][j]) / static_cast<double>(rows[a]) : 0.0);
    for (std::size_t i = 0; i < kNumBatting; ++i)
      v.values.push_back(cols[b] > 0 ? static_cast<double>(matrix.counts[i][b]) / static_cast<double>(cols[b]) : 0.0);
  } else {
    v.values.assign(2 * kMaxDims, 0.0);
    const auto row = static_cast<Eigen::Index>(*ca.row_of(anchor));
    const auto col = static_cast<Eigen::Index>(*ca.col_of(v.top_bowling_feature));
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(ca.dims()); ++k) {
      v.values[static_cast<std::size_t>(k)] = ca.row_principal(row, k);
      v.values[kMaxDims + static_cast<std::size_t>(k)] = ca.col_principal(col, k);
    }
  }
  return v;
}

Embedding tsne(const Eigen::MatrixXd& data, const TsneParams& params) {
  const auto n = static_cast<std::size_t>(data.rows());
  const auto dim = static_cast<std::size_t>(data.cols());
  if (n < 4) throw Error(ErrorCode::ParameterError, "t-SNE needs at least 4 points");
  if (!(params.perplexity > 0.0) || params.perplexity > static_cast<double>(n - 1) / 3.0)
    throw Error(ErrorCode::ParameterError, "perplexity must lie in (0, (N-1)/3] = (0, " +
                                               std::to_string(static_cast<double>(n - 1) / 3.0) + "]");

  // row-major copy of the input
  std::vector<double> x(n * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k) x[i * dim + k] = data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));

  std::vector<double> dist(n * n);
  kernels::omp::squared_distances(x, n, dim, dist);
  std::vector<double> cond(n * n);
  const auto stats = kernels::omp::conditional_affinities(dist, n, params.perplexity, cond);

  // symmetrize: P_ij = (P_j|i + P_i|j) / 2N
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) p[i * n + j] = (cond[i * n + j] + cond[j * n + i]) / (2.0 * static_cast<double>(n));

  Rng rng(params.seed);
  std::vector<double> y(2 * n);
  for (auto& v : y) v = params.initial_scale * rng.normal();
  std::vector<double> grad(2 * n, 0.0);
  std::vector<double> update(2 * n, 0.0);
  std::vector<double> gains(2 * n, 1.0);

  Embedding out;
  out.params = params;
  out.max_perplexity_error = stats.max_perplexity_error;
  out.kl_history.reserve(params.iterations);

  for (std::size_t iter = 0; iter < params.iterations; ++iter) {
    const double exaggeration = iter < params.exaggeration_iterations ? params.exaggeration : 1.0;
    const double momentum = iter < params.momentum_switch ? params.initial_momentum : params.final_momentum;
    // KL is reported for the plain P; the exaggerated gradient uses its own scale
    auto g = kernels::omp::gradient(p, y, n, exaggeration, grad);
    out.kl_history.push_back(g.kl);

    for (std::size_t k = 0; k < 2 * n; ++k) {
      const bool same_sign = (grad[k] > 0.0) == (update[k] > 0.0);
      gains[k] = same_sign ? gains[k] * 0.8 : gains[k] + 0.2;
      gains[k] = std::max(gains[k], 0.01);
      update[k] = momentum * update[k] - params.learning_rate * gains[k] * grad[k];
      y[k] += update[k];
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += y[2 * i];
      my += y[2 * i + 1];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[2 * i] -= mx;
      y[2 * i + 1] -= my;
    }
  }
  out.final_kl = kernels::omp::gradient(p, y, n, 1.0, grad).kl;

  out.points.resize(static_cast<Eigen::Index>(n), 2);
  out.affinities.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out.points(static_cast<Eigen::Index>(i), 0) = y[2 * i];
    out.points(static_cast<Eigen::Index>(i), 1) = y[2 * i + 1];
    for (std::size_t j = 0; j < n; ++j)
      out.affinities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[i * n + j];
  }
  return out;
}

Embedding embed_tsne(const std::vector<PlayerVector>& vectors, const TsneParams& params) {
  if (vectors.empty()) throw Error(ErrorCode::ParameterError, "no player vectors to embed");
  const std::size_t dim = vectors.front().values.size();
  Eigen::MatrixXd data(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].values.size() != dim)
      throw Error(ErrorCode::ParameterError, "player vectors have different lengths");
    for (std::size_t k = 0; k < dim; ++k)
      data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = vectors[i].values[k];
  }
  auto out = tsne(data, params);
  for (const auto& v : vectors) out.labels.push_back(v.label());
  return out;
}

std::string embedding_csv(const std::vector<PlayerVector>& vectors, const Embedding& embedding) {
  std::ostringstream os;
  os << "player,polarity,bowling_feature,x,y\n";
  os.precision(12);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    std::string player = v.player;
    if (player.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : player) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      player = quoted + "\"";
    }
    os << player << ',' << name(v.polarity) << ',' << name(v.top_bowling_feature) << ','
       << round12(embedding.points(static_cast<Eigen::Index>(i), 0)) << ','
       << round12(embedding.points(static_cast<Eigen::Index>(i), 1)) << '\n';
  }
  return os.str();
}

}  // namespace cricrules
