#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cricrules/ca.hpp"
#include "cricrules/confrontation.hpp"
#include "cricrules/rules.hpp"

namespace cricrules {

enum class VectorMode { profile, coordinate };

std::string_view name(VectorMode m);
std::optional<VectorMode> parse_vector_mode(std::string_view s);

/// Largest number of CA dimensions a 19x12 table can retain.
inline constexpr std::size_t kMaxDims = std::min(kNumBatting, kNumBowling) - 1;

/// A player's first strength or weakness rule as a point for embedding.
///
/// profile: the anchor's row profile over the 12 bowling features followed by
/// the top bowling feature's column profile over the 19 batting features.
/// coordinate: the anchor's row principal coordinates followed by the top
/// feature's column principal coordinates, each zero-padded to kMaxDims.
struct PlayerVector {
  std::string player;
  PlayerRole role = PlayerRole::batsman;
  Polarity polarity = Polarity::strength;
  BowlingFeature top_bowling_feature = BowlingFeature::short_length;
  VectorMode mode = VectorMode::profile;
  std::vector<double> values;

  std::string label() const;
};

PlayerVector player_vector(const ConfrontationMatrix& matrix, const CAResult& ca, const std::string& player,
                           PlayerRole role, Polarity polarity, VectorMode mode = VectorMode::profile,
                           std::size_t dims = kDefaultDims);

struct TsneParams {
  double perplexity = 30.0;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  double learning_rate = 200.0;
  double exaggeration = 12.0;
  std::size_t exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  std::size_t momentum_switch = 250;
  double initial_scale = 1e-4;
};

struct Embedding {
  Eigen::MatrixXd points;  // N x 2
  std::vector<std::string> labels;
  TsneParams params;
  double final_kl = 0.0;
  std::vector<double> kl_history;  // KL before the update of each iteration
  double max_perplexity_error = 0.0;
  Eigen::MatrixXd affinities;  // symmetric joint P
};

/// Exact t-SNE of the rows of `data`. Requires N >= 4 and
/// perplexity <= (N - 1) / 3, else ParameterError.
Embedding tsne(const Eigen::MatrixXd& data, const TsneParams& params);

/// Embeds player vectors; labels read "player - bowling feature".
Embedding embed_tsne(const std::vector<PlayerVector>& vectors, const TsneParams& params);

/// CSV with columns player, polarity, bowling_feature, x, y.
std::string embedding_csv(const std::vector<PlayerVector>& vectors, const Embedding& embedding);

}  // namespace cricrules
