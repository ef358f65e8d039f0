#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cricrules/ca.hpp"
#include "cricrules/corpus.hpp"
#include "cricrules/lexicon.hpp"
#include "cricrules/similarity.hpp"

namespace cricrules {

struct PlotStyle {
  int width = 800;
  int height = 800;
  int margin = 70;
  double point_radius = 4.0;
  double font_size = 12.0;
  std::string batting_color = "#1f4e9c";
  std::string bowling_color = "#c0392b";
  std::string title;

  /// Throws ParameterError for non-positive sizes or colours that are not #rrggbb.
  void validate() const;
};

/// contribution: bowling features at sqrt(mass) * standard coordinates.
/// symmetric: bowling features at principal coordinates.
enum class BiplotScaling { contribution, symmetric };

/// Rows in principal coordinates, columns per `scaling`, first two
/// dimensions. `row_subset` limits which batting features are drawn.
/// Throws DegeneratePlot when fewer than two dimensions were retained.
std::string render_biplot(const CAResult& ca, const std::optional<std::set<BattingFeature>>& row_subset,
                          const PlotStyle& style, BiplotScaling scaling = BiplotScaling::contribution);

/// One labelled point per embedded vector, mapped linearly into the
/// viewport with 5% padding on every side.
std::string render_scatter(const Embedding& embedding, const PlotStyle& style);

/// Bigram counts over the records whose text hits `anchor`; top_k by count,
/// ties alphabetical.
std::vector<std::pair<std::string, std::size_t>> word_frequency_report(std::span<const CommentaryRecord> records,
                                                                      BattingFeature anchor,
                                                                      const FeatureLexicon& lex, std::size_t top_k);

}  // namespace cricrules
