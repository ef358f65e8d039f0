#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "cricrules/confrontation.hpp"
#include "cricrules/features.hpp"

namespace cricrules {

/// Singular values at or below this are treated as zero. CA singular values
/// never exceed 1, so the absolute cutoff is also relative to the largest.
inline constexpr double kSingularValueCutoff = 1e-12;

/// Correspondence analysis of a confrontation matrix.
///
/// Rows and columns with zero margin are removed before the decomposition and
/// listed in `dropped_rows` / `dropped_cols`. All per-feature vectors and
/// coordinate matrices are indexed by position in `rows` / `cols`, which keep
/// enumeration order. Coordinate matrices have one column per retained
/// dimension, so they are empty for a table with no association at all.
struct CAResult {
  double total = 0.0;  // grand total of counts
  std::vector<BattingFeature> rows;
  std::vector<BowlingFeature> cols;
  Eigen::VectorXd row_masses;
  Eigen::VectorXd col_masses;
  Eigen::VectorXd singular_values;  // non-increasing
  Eigen::MatrixXd row_standard;     // rows x K
  Eigen::MatrixXd col_standard;     // cols x K
  Eigen::MatrixXd row_principal;    // row_standard * diag(singular_values)
  Eigen::MatrixXd col_principal;    // col_standard * diag(singular_values)
  std::vector<BattingFeature> dropped_rows;
  std::vector<BowlingFeature> dropped_cols;
  double total_inertia = 0.0;
  // true when rows were restricted to a subset while keeping full-table masses
  bool subset = false;

  std::size_t dims() const { return static_cast<std::size_t>(singular_values.size()); }
  std::optional<std::size_t> row_of(BattingFeature f) const;
  std::optional<std::size_t> col_of(BowlingFeature f) const;

  /// Share of total inertia carried by dimension k (0-based), in percent.
  double explained_percent(std::size_t k) const;
};

/// Throws EmptyMatrix for an all-zero table and DegenerateMatrix when fewer
/// than two rows or columns survive.
CAResult run_ca(const ConfrontationMatrix& matrix);

/// CA of the rows in `row_subset` only, with masses taken from the full table.
CAResult subset_ca(const ConfrontationMatrix& matrix, const std::set<BattingFeature>& row_subset);

using AlphaMatrix = std::array<std::array<std::optional<double>, kNumBowling>, kNumBatting>;

/// Observed-to-expected ratio P_ij / (r_i c_j); nullopt where r_i c_j = 0.
AlphaMatrix alpha_matrix(const ConfrontationMatrix& matrix);

/// Field names are fixed; numbers carry 12 significant digits.
nlohmann::json to_json(const CAResult& ca);

}  // namespace cricrules
