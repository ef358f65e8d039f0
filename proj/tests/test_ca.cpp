#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cricrules/ca.hpp"
#include "cricrules/error.hpp"
#include "support.hpp"

using namespace cricrules;

namespace {

ConfrontationMatrix two_by_two() {
  ConfrontationMatrix m;
  m.at(BattingFeature::run0, BowlingFeature::short_length) = 3;
  m.at(BattingFeature::run0, BowlingFeature::good) = 1;
  m.at(BattingFeature::run1, BowlingFeature::short_length) = 1;
  m.at(BattingFeature::run1, BowlingFeature::good) = 3;
  return m;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParameterError;
}

// Checks every structural invariant of a result against its source counts.
void check_invariants(const ConfrontationMatrix& m, const CAResult& ca, double tol = 1e-9) {
  const auto n = testing::to_eigen(m);
  const double total = n.sum();
  CHECK(ca.total == total);
  CHECK(ca.row_masses.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ca.col_masses.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ca.row_masses.minCoeff() > 0.0);
  CHECK(ca.col_masses.minCoeff() > 0.0);
  CHECK(ca.rows.size() + ca.dropped_rows.size() == kNumBatting);
  CHECK(ca.cols.size() + ca.dropped_cols.size() == kNumBowling);

  const auto k = static_cast<Eigen::Index>(ca.dims());
  for (Eigen::Index d = 1; d < k; ++d) CHECK(ca.singular_values(d) <= ca.singular_values(d - 1));
  CHECK((ca.row_principal - ca.row_standard * ca.singular_values.asDiagonal()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((ca.col_principal - ca.col_standard * ca.singular_values.asDiagonal()).cwiseAbs().maxCoeff() <= 1e-12);
  if (k > 0) {
    CHECK((ca.row_masses.transpose() * ca.row_principal).cwiseAbs().maxCoeff() <= tol);
    CHECK((ca.col_masses.transpose() * ca.col_principal).cwiseAbs().maxCoeff() <= tol);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(k, k);
    CHECK((ca.row_standard.transpose() * ca.row_masses.asDiagonal() * ca.row_standard - eye).cwiseAbs().maxCoeff() <=
          tol);
    CHECK((ca.col_standard.transpose() * ca.col_masses.asDiagonal() * ca.col_standard - eye).cwiseAbs().maxCoeff() <=
          tol);
  }
  CHECK(ca.total_inertia == doctest::Approx(ca.singular_values.squaredNorm()).epsilon(1e-12));
  CHECK(std::abs(ca.total_inertia - testing::chi2_over_n(n)) <= tol);

  // reconstitution
  double worst = 0.0;
  for (std::size_t a = 0; a < ca.rows.size(); ++a)
    for (std::size_t b = 0; b < ca.cols.size(); ++b) {
      const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
      double s = 1.0;
      for (Eigen::Index d = 0; d < k; ++d) s += ca.row_standard(i, d) * ca.col_standard(j, d) * ca.singular_values(d);
      const double p = static_cast<double>(m.counts[index(ca.rows[a])][index(ca.cols[b])]) / total;
      worst = std::max(worst, std::abs(p - ca.row_masses(i) * ca.col_masses(j) * s));
    }
  CHECK(worst <= tol);
}

}  // namespace

TEST_CASE("2x2 fixture") {
  const auto m = two_by_two();
  const auto ca = run_ca(m);
  CHECK(ca.rows == std::vector<BattingFeature>{BattingFeature::run0, BattingFeature::run1});
  CHECK(ca.cols == std::vector<BowlingFeature>{BowlingFeature::short_length, BowlingFeature::good});
  CHECK(ca.dropped_rows.size() == 17);
  CHECK(ca.dropped_cols.size() == 10);
  REQUIRE(ca.dims() == 1);
  // chi-square by hand: expected 2 everywhere, (1 + 1 + 1 + 1) / 2 = 2, n = 8
  CHECK(std::abs(ca.total_inertia - 0.25) <= 1e-9);
  CHECK(std::abs(ca.singular_values(0) - 0.5) <= 1e-9);
  CHECK(ca.explained_percent(0) == doctest::Approx(100.0));
  check_invariants(m, ca);

  const auto alpha = alpha_matrix(m);
  CHECK(*alpha[0][0] == doctest::Approx(1.5));
  CHECK(*alpha[0][1] == doctest::Approx(0.5));
  CHECK_FALSE(alpha[2][0]);
  CHECK_FALSE(alpha[0][5]);
}

TEST_CASE("random matrices satisfy every invariant") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_matrix(rng, 30, trial % 3 != 0);
    if (sum(m) == 0) continue;
    check_invariants(m, run_ca(m));
  }
}

TEST_CASE("sparse matrices with dropped rows and columns") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    ConfrontationMatrix m;
    for (int k = 0; k < 25; ++k) m.counts[rng.below(kNumBatting)][rng.below(kNumBowling)] += 1 + rng.below(4);
    CAResult ca;
    try {
      ca = run_ca(m);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateMatrix);
      continue;
    }
    check_invariants(m, ca);
    for (auto f : ca.dropped_rows) CHECK(row_sums(m)[index(f)] == 0);
    for (auto f : ca.dropped_cols) CHECK(col_sums(m)[index(f)] == 0);
  }
}

TEST_CASE("independence matrices have no retained dimension") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::independence_matrix(rng);
    const auto ca = run_ca(m);
    CHECK(ca.total_inertia < 1e-12);
    CHECK(ca.dims() == 0);
    CHECK(ca.row_principal.cols() == 0);
    CHECK(ca.explained_percent(0) == 0.0);
    for (const auto& row : alpha_matrix(m))
      for (const auto& a : row) CHECK(std::abs(*a - 1.0) <= 1e-12);
  }
}

TEST_CASE("alpha identities and oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_matrix(rng, 12, false);
    if (sum(m) == 0) continue;
    const auto alpha = alpha_matrix(m);
    const auto rows = row_sums(m);
    const auto cols = col_sums(m);
    const double n = static_cast<double>(sum(m));
    double weighted = 0.0;
    for (std::size_t i = 0; i < kNumBatting; ++i)
      for (std::size_t j = 0; j < kNumBowling; ++j) {
        const auto want = testing::alpha_oracle(m, i, j);
        REQUIRE(alpha[i][j].has_value() == want.has_value());
        if (!want) continue;
        CHECK(*alpha[i][j] == doctest::Approx(*want).epsilon(1e-12));
        weighted += static_cast<double>(rows[i]) / n * static_cast<double>(cols[j]) / n * *alpha[i][j];
      }
    CHECK(weighted == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("scaling counts changes nothing") {
  Rng rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_matrix(rng, 40);
    const auto base = run_ca(m);
    for (Count factor : {2, 10, 1000}) {
      const auto big = run_ca(scaled(m, factor));
      REQUIRE(big.dims() == base.dims());
      CHECK((big.singular_values - base.singular_values).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((big.row_principal - base.row_principal).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((big.col_principal - base.col_principal).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((big.row_masses - base.row_masses).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("permuting bowling columns permutes coordinates") {
  Rng rng(8);
  const auto m = testing::random_matrix(rng, 25);
  ConfrontationMatrix p;
  // reverse the column order
  for (std::size_t i = 0; i < kNumBatting; ++i)
    for (std::size_t j = 0; j < kNumBowling; ++j) p.counts[i][j] = m.counts[i][kNumBowling - 1 - j];
  const auto a = run_ca(m);
  const auto b = run_ca(p);
  REQUIRE(a.dims() == b.dims());
  CHECK((a.row_principal - b.row_principal).cwiseAbs().maxCoeff() <= 1e-9);
  for (std::size_t j = 0; j < kNumBowling; ++j)
    CHECK((a.col_principal.row(static_cast<Eigen::Index>(j)) -
           b.col_principal.row(static_cast<Eigen::Index>(kNumBowling - 1 - j)))
              .cwiseAbs()
              .maxCoeff() <= 1e-9);
}

TEST_CASE("sign convention: largest entry of each left singular vector is positive") {
  Rng rng(44);
  const auto m = testing::random_matrix(rng, 25);
  const auto ca = run_ca(m);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(ca.dims()); ++k) {
    const Eigen::VectorXd u = ca.row_masses.cwiseSqrt().asDiagonal() * ca.row_standard.col(k);
    Eigen::Index at = 0;
    u.cwiseAbs().maxCoeff(&at);
    CHECK(u(at) > 0.0);
  }
}

TEST_CASE("errors") {
  ConfrontationMatrix zero;
  CHECK(code_of([&] { run_ca(zero); }) == ErrorCode::EmptyMatrix);
  CHECK(code_of([&] { alpha_matrix(zero); }) == ErrorCode::EmptyMatrix);
  ConfrontationMatrix one_row;
  one_row.at(BattingFeature::beaten, BowlingFeature::good) = 3;
  one_row.at(BattingFeature::beaten, BowlingFeature::swing) = 2;
  CHECK(code_of([&] { run_ca(one_row); }) == ErrorCode::DegenerateMatrix);
  CHECK(code_of([&] { subset_ca(two_by_two(), {}); }) == ErrorCode::ParameterError);
  CHECK(code_of([&] { subset_ca(two_by_two(), {BattingFeature::out}); }) == ErrorCode::DegenerateMatrix);
}

TEST_CASE("subset CA") {
  Rng rng(61);
  const auto m = testing::random_matrix(rng, 20);
  const auto full = run_ca(m);

  std::set<BattingFeature> all;
  for (std::size_t i = 0; i < kNumBatting; ++i) all.insert(batting_at(i));
  const auto same = subset_ca(m, all);
  REQUIRE(same.dims() == full.dims());
  CHECK((same.singular_values - full.singular_values).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((same.row_principal - full.row_principal).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((same.col_principal - full.col_principal).cwiseAbs().maxCoeff() <= 1e-10);

  const auto single = subset_ca(m, {BattingFeature::attacked});
  CHECK(single.subset);
  CHECK(single.rows == std::vector<BattingFeature>{BattingFeature::attacked});
  CHECK(single.total_inertia <= full.total_inertia + 1e-12);
  CHECK(single.cols.size() == kNumBowling);

  const std::set<BattingFeature> response{BattingFeature::beaten, BattingFeature::defended, BattingFeature::attacked};
  const auto sub = subset_ca(m, response);
  CHECK(sub.rows.size() == 3);
  CHECK(sub.total_inertia <= full.total_inertia + 1e-12);
  // masses come from the full table
  CHECK(sub.col_masses.sum() == doctest::Approx(1.0));
  CHECK(sub.row_masses(0) == doctest::Approx(full.row_masses(*full.row_of(BattingFeature::beaten))));

  Rng r2(3);
  const auto ind = testing::independence_matrix(r2);
  CHECK(subset_ca(ind, response).total_inertia < 1e-12);
}

TEST_CASE("json export has fixed fields") {
  const auto j = to_json(run_ca(two_by_two()));
  for (const char* key : {"total", "subset", "rows", "columns", "row_masses", "column_masses", "singular_values",
                          "total_inertia", "row_standard_coordinates", "column_standard_coordinates",
                          "row_principal_coordinates", "column_principal_coordinates", "dropped_rows",
                          "dropped_columns"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK(j["rows"][0] == "run0");
  CHECK(j["total_inertia"] == 0.25);
}
