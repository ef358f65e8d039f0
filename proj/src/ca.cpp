#include "cricrules/ca.hpp"

#include <algorithm>
#include <cmath>

#include "cricrules/error.hpp"
#include "cricrules/json_util.hpp"

namespace cricrules {

namespace {

struct Margins {
  Count total = 0;
  std::array<Count, kNumBatting> row{};
  std::array<Count, kNumBowling> col{};
};

Margins margins_of(const ConfrontationMatrix& m) {
  Margins out{sum(m), row_sums(m), col_sums(m)};
  if (out.total == 0) throw Error(ErrorCode::EmptyMatrix, "confrontation matrix has no counts");
  return out;
}

// Standardized residual (N_ij n - R_i C_j) / (n sqrt(R_i C_j)). The numerator
// is exact integer arithmetic, so an independence table gives exact zeros.
double residual(Count cell, Count total, Count row, Count col) {
  __int128 num = static_cast<__int128>(cell) * total - static_cast<__int128>(row) * col;
  double denom = static_cast<double>(total) * std::sqrt(static_cast<double>(row) * static_cast<double>(col));
  return static_cast<double>(num) / denom;
}

/// Fills singular values and coordinates from the residual matrix.
void decompose(const Eigen::MatrixXd& residuals, CAResult& ca) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residuals, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index k = 0;
  while (k < sv.size() && sv(k) > kSingularValueCutoff) ++k;

  Eigen::MatrixXd u = svd.matrixU().leftCols(k);
  Eigen::MatrixXd v = svd.matrixV().leftCols(k);
  // the largest-magnitude entry of each left vector is positive
  for (Eigen::Index d = 0; d < k; ++d) {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < u.rows(); ++i)
      if (std::abs(u(i, d)) > std::abs(u(arg, d))) arg = i;
    if (u(arg, d) < 0) {
      u.col(d) *= -1.0;
      v.col(d) *= -1.0;
    }
  }

  ca.singular_values = sv.head(k);
  ca.row_standard = ca.row_masses.cwiseSqrt().cwiseInverse().asDiagonal() * u;
  ca.col_standard = ca.col_masses.cwiseSqrt().cwiseInverse().asDiagonal() * v;
  ca.row_principal = ca.row_standard * ca.singular_values.asDiagonal();
  ca.col_principal = ca.col_standard * ca.singular_values.asDiagonal();
  ca.total_inertia = ca.singular_values.squaredNorm();
}

CAResult analyse(const ConfrontationMatrix& matrix, const std::set<BattingFeature>* row_subset) {
  const Margins mg = margins_of(matrix);
  CAResult ca;
  ca.total = static_cast<double>(mg.total);
  ca.subset = row_subset != nullptr;

  for (std::size_t a = 0; a < kNumBatting; ++a) {
    if (mg.row[a] == 0) {
      ca.dropped_rows.push_back(batting_at(a));
    } else if (!row_subset || row_subset->contains(batting_at(a))) {
      ca.rows.push_back(batting_at(a));
    }
  }
  for (std::size_t b = 0; b < kNumBowling; ++b)
    (mg.col[b] == 0 ? ca.dropped_cols : ca.cols).push_back(bowling_at(b));

  if (row_subset) {
    if (ca.rows.empty())
      throw Error(ErrorCode::DegenerateMatrix, "no feature of the row subset has any counts");
    if (ca.cols.size() < 2)
      throw Error(ErrorCode::DegenerateMatrix, "fewer than two bowling features have counts");
  } else if (ca.rows.size() < 2 || ca.cols.size() < 2) {
    throw Error(ErrorCode::DegenerateMatrix,
                "matrix reduces to " + std::to_string(ca.rows.size()) + "x" + std::to_string(ca.cols.size()) +
                    " after dropping empty features; need at least 2x2");
  }

  const auto nr = static_cast<Eigen::Index>(ca.rows.size());
  const auto nc = static_cast<Eigen::Index>(ca.cols.size());
  ca.row_masses.resize(nr);
  ca.col_masses.resize(nc);
  for (Eigen::Index i = 0; i < nr; ++i)
    ca.row_masses(i) = static_cast<double>(mg.row[index(ca.rows[i])]) / ca.total;
  for (Eigen::Index j = 0; j < nc; ++j)
    ca.col_masses(j) = static_cast<double>(mg.col[index(ca.cols[j])]) / ca.total;

  Eigen::MatrixXd residuals(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    const auto a = index(ca.rows[i]);
    for (Eigen::Index j = 0; j < nc; ++j) {
      const auto b = index(ca.cols[j]);
      residuals(i, j) = residual(matrix.counts[a][b], mg.total, mg.row[a], mg.col[b]);
    }
  }
  decompose(residuals, ca);
  return ca;
}

}  // namespace

std::optional<std::size_t> CAResult::row_of(BattingFeature f) const {
  auto it = std::find(rows.begin(), rows.end(), f);
  if (it == rows.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows.begin());
}

std::optional<std::size_t> CAResult::col_of(BowlingFeature f) const {
  auto it = std::find(cols.begin(), cols.end(), f);
  if (it == cols.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cols.begin());
}

double CAResult::explained_percent(std::size_t k) const {
  if (k >= dims() || total_inertia <= 0.0) return 0.0;
  const double s = singular_values(static_cast<Eigen::Index>(k));
  return 100.0 * s * s / total_inertia;
}

CAResult run_ca(const ConfrontationMatrix& matrix) { return analyse(matrix, nullptr); }

CAResult subset_ca(const ConfrontationMatrix& matrix, const std::set<BattingFeature>& row_subset) {
  if (row_subset.empty()) throw Error(ErrorCode::ParameterError, "row subset is empty");
  return analyse(matrix, &row_subset);
}

AlphaMatrix alpha_matrix(const ConfrontationMatrix& matrix) {
  const Margins mg = margins_of(matrix);
  AlphaMatrix alpha{};
  for (std::size_t a = 0; a < kNumBatting; ++a)
    for (std::size_t b = 0; b < kNumBowling; ++b) {
      if (mg.row[a] == 0 || mg.col[b] == 0) continue;
      // (N_ab / n) / ((R_a / n)(C_b / n)) = N_ab n / (R_a C_b)
      alpha[a][b] = static_cast<double>(matrix.counts[a][b]) * static_cast<double>(mg.total) /
                    (static_cast<double>(mg.row[a]) * static_cast<double>(mg.col[b]));
    }
  return alpha;
}

nlohmann::json to_json(const CAResult& ca) {
  auto names = [](const auto& features) {
    auto out = nlohmann::json::array();
    for (auto f : features) out.push_back(name(f));
    return out;
  };
  return {
      {"total", round12(ca.total)},
      {"subset", ca.subset},
      {"rows", names(ca.rows)},
      {"columns", names(ca.cols)},
      {"row_masses", json_vector(ca.row_masses)},
      {"column_masses", json_vector(ca.col_masses)},
      {"singular_values", json_vector(ca.singular_values)},
      {"total_inertia", round12(ca.total_inertia)},
      {"row_standard_coordinates", json_matrix(ca.row_standard)},
      {"column_standard_coordinates", json_matrix(ca.col_standard)},
      {"row_principal_coordinates", json_matrix(ca.row_principal)},
      {"column_principal_coordinates", json_matrix(ca.col_principal)},
      {"dropped_rows", names(ca.dropped_rows)},
      {"dropped_columns", names(ca.dropped_cols)},
  };
}

}  // namespace cricrules
