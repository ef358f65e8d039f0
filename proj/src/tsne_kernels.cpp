#include "cricrules/tsne_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cricrules::kernels {

namespace {

// Bandwidth search for one point. Distances are shifted by the nearest
// neighbour's distance and divided by their mean so the bracket on log(beta)
// is data independent and exp() never underflows for the nearest point.
std::size_t calibrate_row(std::span<const double> dist_row, std::size_t self, double perplexity,
                          std::span<double> out_row, double& error) {
  const std::size_t n = dist_row.size();
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    if (j != self) nearest = std::min(nearest, dist_row[j]);
  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != self) mean += dist_row[j] - nearest;
  mean /= static_cast<double>(n - 1);

  auto evaluate = [&](double beta) {
    double z = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == self) {
        out_row[j] = 0.0;
        continue;
      }
      const double d = mean > 0.0 ? (dist_row[j] - nearest) / mean : 0.0;
      const double p = std::exp(-beta * d);
      out_row[j] = p;
      z += p;
      weighted += p * d;
    }
    for (std::size_t j = 0; j < n; ++j) out_row[j] /= z;
    const double entropy = std::log(z) + beta * weighted / z;
    return std::exp(entropy);
  };

  double lo = -40.0;
  double hi = 40.0;
  std::size_t steps = 0;
  double perp = 0.0;
  while (steps < kMaxBisectionSteps) {
    const double mid = 0.5 * (lo + hi);
    perp = evaluate(std::exp(mid));
    ++steps;
    if (std::abs(perp - perplexity) <= kPerplexityTolerance) break;
    // perplexity falls as beta grows
    if (perp > perplexity) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  error = std::abs(perp - perplexity);
  return steps;
}

}  // namespace

namespace serial {

void squared_distances(std::span<const double> data, std::size_t n, std::size_t dim, std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = data[i * dim + k] - data[j * dim + k];
        s += d * d;
      }
      out[i * n + j] = s;
    }
}

CalibrationStats conditional_affinities(std::span<const double> distances, std::size_t n, double perplexity,
                                        std::span<double> out) {
  CalibrationStats stats;
  for (std::size_t i = 0; i < n; ++i) {
    double err = 0.0;
    auto steps = calibrate_row(distances.subspan(i * n, n), i, perplexity, out.subspan(i * n, n), err);
    stats.max_perplexity_error = std::max(stats.max_perplexity_error, err);
    stats.max_steps = std::max(stats.max_steps, steps);
  }
  return stats;
}

GradientResult gradient(std::span<const double> p, std::span<const double> y, std::size_t n,
                        double exaggeration, std::span<double> grad) {
  std::vector<double> q(n * n, 0.0);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = y[2 * i] - y[2 * j];
      const double dy = y[2 * i + 1] - y[2 * j + 1];
      q[i * n + j] = 1.0 / (1.0 + dx * dx + dy * dy);
      z += q[i * n + j];
    }
  GradientResult result;
  for (std::size_t i = 0; i < n; ++i) {
    double gx = 0.0;
    double gy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double pij = p[i * n + j];
      const double qij = q[i * n + j];
      const double mult = (exaggeration * pij - qij / z) * qij;
      gx += mult * (y[2 * i] - y[2 * j]);
      gy += mult * (y[2 * i + 1] - y[2 * j + 1]);
      if (pij > 0.0) result.kl += pij * std::log(pij / (qij / z));
    }
    grad[2 * i] = gx;
    grad[2 * i + 1] = gy;
  }
  return result;
}

}  // namespace serial

namespace omp {

void squared_distances(std::span<const double> data, std::size_t n, std::size_t dim, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = data[i * dim + k] - data[j * dim + k];
        s += d * d;
      }
      out[i * n + j] = s;
    }
  }
}

CalibrationStats conditional_affinities(std::span<const double> distances, std::size_t n, double perplexity,
                                        std::span<double> out) {
  std::vector<double> errors(n, 0.0);
  std::vector<std::size_t> steps(n, 0);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    steps[i] = calibrate_row(distances.subspan(i * n, n), i, perplexity, out.subspan(i * n, n), errors[i]);
  }
  CalibrationStats stats;
  for (std::size_t i = 0; i < n; ++i) {
    stats.max_perplexity_error = std::max(stats.max_perplexity_error, errors[i]);
    stats.max_steps = std::max(stats.max_steps, steps[i]);
  }
  return stats;
}

GradientResult gradient(std::span<const double> p, std::span<const double> y, std::size_t n,
                        double exaggeration, std::span<double> grad) {
  std::vector<double> q(n * n, 0.0);
  std::vector<double> row_z(n, 0.0);
  std::vector<double> row_kl(n, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dx = y[2 * i] - y[2 * j];
        const double dy = y[2 * i + 1] - y[2 * j + 1];
        q[i * n + j] = 1.0 / (1.0 + dx * dx + dy * dy);
        s += q[i * n + j];
      }
      row_z[i] = s;
    }

    // every thread computes the same total in the same order
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) z += row_z[i];

#pragma omp for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      double gx = 0.0;
      double gy = 0.0;
      double kl = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double pij = p[i * n + j];
        const double qij = q[i * n + j];
        const double mult = (exaggeration * pij - qij / z) * qij;
        gx += mult * (y[2 * i] - y[2 * j]);
        gy += mult * (y[2 * i + 1] - y[2 * j + 1]);
        if (pij > 0.0) kl += pij * std::log(pij / (qij / z));
      }
      grad[2 * i] = gx;
      grad[2 * i + 1] = gy;
      row_kl[i] = kl;
    }
  }

  GradientResult result;
  for (std::size_t i = 0; i < n; ++i) result.kl += row_kl[i];
  return result;
}

}  // namespace omp

}  // namespace cricrules::kernels
