#pragma once

// Dense O(N^2) kernels behind exact t-SNE. `data`, `affinities`, `embedding`
// and `gradient` are row-major.
//
// The omp:: versions split work by row and reduce per-row partial sums in
// index order, so their output does not depend on the thread count. The
// serial:: versions are straightforward loops kept as the reference.

#include <cstddef>
#include <span>

namespace cricrules::kernels {

struct CalibrationStats {
  double max_perplexity_error = 0.0;
  std::size_t max_steps = 0;
};

struct GradientResult {
  double kl = 0.0;  // KL(P || Q) for the un-exaggerated P
};

inline constexpr std::size_t kMaxBisectionSteps = 64;
inline constexpr double kPerplexityTolerance = 1e-3;

namespace serial {

void squared_distances(std::span<const double> data, std::size_t n, std::size_t dim, std::span<double> out);

/// Row i of `out` receives P(j | i) with a bandwidth chosen by bisection so
/// that its perplexity matches `perplexity`.
CalibrationStats conditional_affinities(std::span<const double> distances, std::size_t n, double perplexity,
                                        std::span<double> out);

/// Gradient of KL(exaggeration * P || Q) with respect to the 2-D embedding,
/// without the constant factor 4 (absorbed into the learning rate).
GradientResult gradient(std::span<const double> affinities, std::span<const double> embedding, std::size_t n,
                        double exaggeration, std::span<double> gradient);

}  // namespace serial

namespace omp {

void squared_distances(std::span<const double> data, std::size_t n, std::size_t dim, std::span<double> out);
CalibrationStats conditional_affinities(std::span<const double> distances, std::size_t n, double perplexity,
                                        std::span<double> out);
GradientResult gradient(std::span<const double> affinities, std::span<const double> embedding, std::size_t n,
                        double exaggeration, std::span<double> gradient);

}  // namespace omp

}  // namespace cricrules::kernels
