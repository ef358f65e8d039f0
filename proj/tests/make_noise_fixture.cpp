// Writes the sampling-noise bound for the holdout statistic: for 20 seeds,
// CA configurations of two same-distribution halves are aligned by label and
// compared with the grid-search Procrustes oracle. The 95th percentile of the
// 20 statistics is the bound.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "cricrules/corpus.hpp"
#include "cricrules/validation.hpp"
#include "support.hpp"

using namespace cricrules;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_noise_fixture <out.json>\n";
    return 2;
  }
  const auto& lex = FeatureLexicon::builtin();
  const std::size_t n = 5000;
  std::vector<double> stats;
  nlohmann::json runs = nlohmann::json::array();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto records = testing::same_distribution_halves(seed, n);
    const std::span<const CommentaryRecord> all(records);
    const auto first = configuration(run_ca(build_matrix(all.first(n), lex)), 2, ConfigurationPoints::both);
    const auto second = configuration(run_ca(build_matrix(all.last(n), lex)), 2, ConfigurationPoints::both);
    std::map<std::string, Eigen::Index> at;
    for (std::size_t i = 0; i < second.labels.size(); ++i) at[second.labels[i]] = static_cast<Eigen::Index>(i);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (std::size_t i = 0; i < first.labels.size(); ++i)
      if (auto it = at.find(first.labels[i]); it != at.end()) pairs.emplace_back(static_cast<Eigen::Index>(i), it->second);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(pairs.size()), 2), y(static_cast<Eigen::Index>(pairs.size()), 2);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      x.row(static_cast<Eigen::Index>(k)) = first.points.row(pairs[k].first);
      y.row(static_cast<Eigen::Index>(k)) = second.points.row(pairs[k].second);
    }
    const double d = testing::procrustes_grid_oracle(x, y);
    stats.push_back(d);
    runs.push_back({{"seed", seed}, {"delta_sq", d}});
  }
  std::sort(stats.begin(), stats.end());
  // linear interpolation between order statistics
  const double pos = 0.95 * static_cast<double>(stats.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  const double p95 = stats[lo] + frac * (stats[std::min(lo + 1, stats.size() - 1)] - stats[lo]);
  nlohmann::json doc{{"records_per_half", n}, {"dims", 2}, {"points", "both"}, {"p95", p95}, {"runs", runs}};
  std::ofstream(argv[1]) << doc.dump(2) << "\n";
  std::printf("p95 %.6f (min %.6f, max %.6f)\n", p95, stats.front(), stats.back());
  return 0;
}
