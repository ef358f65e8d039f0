#pragma once
// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls into the code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cricrules/confrontation.hpp"
#include "cricrules/corpus.hpp"
#include "cricrules/lexicon.hpp"
#include "cricrules/random.hpp"
#include "cricrules/synthetic.hpp"

namespace testing {

using cricrules::ConfrontationMatrix;
using cricrules::kNumBatting;
using cricrules::kNumBowling;

// The delivery traced cell by cell in the documentation of the matrix builder.
inline cricrules::CommentaryRecord traced_delivery() {
  cricrules::CommentaryRecord r;
  r.match_id = "m-2015-ashes-1";
  r.series_id = "ashes-2015";
  r.innings = 1;
  r.over = 34;
  r.ball = 2;
  r.date = cricrules::Date{2015, 7, 8};
  r.bowler = "Anderson";
  r.batsman = "Smith";
  r.outcome = "1 run";
  r.text = "Anderson to Smith, 1 run, good length, angling in, Smith pokes at it and gets an outside edge "
           "along the ground. False shot";
  return r;
}

inline Eigen::MatrixXd to_eigen(const ConfrontationMatrix& m) {
  Eigen::MatrixXd out(kNumBatting, kNumBowling);
  for (std::size_t i = 0; i < kNumBatting; ++i)
    for (std::size_t j = 0; j < kNumBowling; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(m.counts[i][j]);
  return out;
}

/// Random 19x12 counts in [0, max]; with `full_margins` every row and column
/// has at least one nonzero cell.
inline ConfrontationMatrix random_matrix(cricrules::Rng& rng, int max, bool full_margins = true) {
  ConfrontationMatrix m;
  for (auto& row : m.counts)
    for (auto& cell : row) cell = static_cast<cricrules::Count>(rng.below(static_cast<std::uint64_t>(max) + 1));
  if (full_margins) {
    for (std::size_t i = 0; i < kNumBatting; ++i) m.counts[i][i % kNumBowling] += 1;
    for (std::size_t j = 0; j < kNumBowling; ++j) m.counts[(j * 7) % kNumBatting][j] += 1;
  }
  return m;
}

/// counts[i][j] = scale * u_i * v_j for positive integer profiles.
inline ConfrontationMatrix independence_matrix(cricrules::Rng& rng, int scale = 10) {
  ConfrontationMatrix m;
  std::vector<cricrules::Count> u(kNumBatting), v(kNumBowling);
  for (auto& x : u) x = 1 + static_cast<cricrules::Count>(rng.below(9));
  for (auto& x : v) x = 1 + static_cast<cricrules::Count>(rng.below(9));
  for (std::size_t i = 0; i < kNumBatting; ++i)
    for (std::size_t j = 0; j < kNumBowling; ++j) m.counts[i][j] = scale * u[i] * v[j];
  return m;
}

/// Pearson chi-square of the table divided by its total, over cells whose
/// expected count is positive.
inline double chi2_over_n(const Eigen::MatrixXd& n) {
  const double total = n.sum();
  const Eigen::VectorXd rows = n.rowwise().sum();
  const Eigen::VectorXd cols = n.colwise().sum();
  double chi2 = 0.0;
  for (Eigen::Index i = 0; i < n.rows(); ++i)
    for (Eigen::Index j = 0; j < n.cols(); ++j) {
      const double expected = rows(i) * cols(j) / total;
      if (expected > 0.0) chi2 += (n(i, j) - expected) * (n(i, j) - expected) / expected;
    }
  return chi2 / total;
}

/// Observed over expected, straight from the counts.
inline std::optional<double> alpha_oracle(const ConfrontationMatrix& m, std::size_t i, std::size_t j) {
  double total = 0.0, row = 0.0, col = 0.0;
  for (std::size_t a = 0; a < kNumBatting; ++a)
    for (std::size_t b = 0; b < kNumBowling; ++b) {
      total += static_cast<double>(m.counts[a][b]);
      if (a == i) row += static_cast<double>(m.counts[a][b]);
      if (b == j) col += static_cast<double>(m.counts[a][b]);
    }
  if (row == 0.0 || col == 0.0) return std::nullopt;
  return static_cast<double>(m.counts[i][j]) * total / (row * col);
}

/// F * G^T over all dimensions without an SVD: with the standardized
/// residuals S, F G^T = D_r^{-1/2} (S S^T)^{1/2} S D_c^{-1/2}, and the matrix
/// square root comes from a symmetric eigendecomposition. Requires every
/// row and column margin to be positive.
inline Eigen::MatrixXd fg_oracle(const Eigen::MatrixXd& counts) {
  const double total = counts.sum();
  const Eigen::MatrixXd p = counts / total;
  const Eigen::VectorXd r = p.rowwise().sum();
  const Eigen::VectorXd c = p.colwise().sum();
  Eigen::MatrixXd s(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) s(i, j) = (p(i, j) - r(i) * c(j)) / std::sqrt(r(i) * c(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s * s.transpose());
  const Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd root = eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
  return r.cwiseSqrt().cwiseInverse().asDiagonal() * root * s * c.cwiseSqrt().cwiseInverse().asDiagonal();
}

/// 2-D Procrustes statistic by exhaustive search over rotations (and
/// reflections): a 0.01-degree grid, then golden-section refinement.
inline double procrustes_grid_oracle(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  Eigen::MatrixXd xc = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd yc = y.rowwise() - y.colwise().mean();
  xc /= xc.norm();
  yc /= yc.norm();
  // for unit-norm configurations the best scale gives residual 1 - t^2 with
  // t = trace(X^T Y Q), so maximize |t|
  auto fit = [&](double angle, bool reflect) {
    Eigen::Matrix2d q;
    q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    if (reflect) q.col(1) *= -1.0;
    const double t = (xc.transpose() * yc * q).trace();
    return t > 0.0 ? t * t : 0.0;
  };
  double best = 0.0;
  for (bool reflect : {false, true}) {
    const int steps = 36000;
    const double h = 2.0 * std::numbers::pi / steps;
    int at = 0;
    double top = -1.0;
    for (int k = 0; k < steps; ++k) {
      const double v = fit(k * h, reflect);
      if (v > top) top = v, at = k;
    }
    double lo = (at - 1) * h, hi = (at + 1) * h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
      const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
      if (fit(m1, reflect) < fit(m2, reflect)) lo = m1; else hi = m2;
    }
    best = std::max({best, top, fit((lo + hi) / 2.0, reflect)});
  }
  return 1.0 - best;
}

/// Phrase hits by scanning the space-joined token string for each phrase,
/// instead of building the n-gram set.
inline cricrules::MatchedFeatures scan_oracle(const std::string& text, const cricrules::FeatureLexicon& lex) {
  std::string joined = " ";
  for (const auto& t : cricrules::tokenize(text)) joined += t + " ";
  cricrules::MatchedFeatures out;
  for (std::size_t i = 0; i < kNumBatting; ++i)
    for (const auto& p : lex.phrases(cricrules::batting_at(i)))
      if (joined.find(" " + p + " ") != std::string::npos) out.batting.set(i);
  for (std::size_t j = 0; j < kNumBowling; ++j)
    for (const auto& p : lex.phrases(cricrules::bowling_at(j)))
      if (joined.find(" " + p + " ") != std::string::npos) out.bowling.set(j);
  return out;
}

/// Three gaussian clusters of 10 points in 31 dimensions, centres 10 sigma
/// apart. Labels are 0, 1, 2.
inline Eigen::MatrixXd three_clusters(std::uint64_t seed, std::vector<int>& labels) {
  cricrules::Rng rng(seed);
  Eigen::MatrixXd data(30, 31);
  labels.assign(30, 0);
  for (int i = 0; i < 30; ++i) {
    labels[static_cast<std::size_t>(i)] = i / 10;
    for (int d = 0; d < 31; ++d) data(i, d) = rng.normal() + (d == i / 10 ? 10.0 : 0.0);
  }
  return data;
}

/// Share of points whose nearest neighbour in `points` has the same label.
inline double nn_purity(const Eigen::MatrixXd& points, const std::vector<int>& labels) {
  int same = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    Eigen::Index best = -1;
    double dmin = 0.0;
    for (Eigen::Index j = 0; j < points.rows(); ++j) {
      if (j == i) continue;
      const double d = (points.row(i) - points.row(j)).squaredNorm();
      if (best < 0 || d < dmin) best = j, dmin = d;
    }
    if (labels[static_cast<std::size_t>(best)] == labels[static_cast<std::size_t>(i)]) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(points.rows());
}

/// Random 2-D orthogonal matrix, a reflection when `reflect` is set.
inline Eigen::Matrix2d random_orthogonal(cricrules::Rng& rng, bool reflect) {
  const double a = rng.uniform() * 2.0 * std::numbers::pi;
  Eigen::Matrix2d q;
  q << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  if (reflect) q.col(0) *= -1.0;
  return q;
}

/// Two planted corpora of n records each, drawn from the same distribution
/// with different seeds. The first is dated two years before the second so a
/// one-year holdout window separates them exactly.
inline std::vector<cricrules::CommentaryRecord> same_distribution_halves(std::uint64_t seed, std::size_t n) {
  auto a = cricrules::generate_synthetic(cricrules::planted_spec(), n, seed);
  auto b = cricrules::generate_synthetic(cricrules::planted_spec(), n, seed + 0x9e3779b9ULL);
  for (auto& r : a) r.date = cricrules::Date{2014, 1, 1};
  for (auto& r : b) r.date = cricrules::Date{2016, 1, 1};
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// FNV-1a, for comparing output trees.
inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace testing
