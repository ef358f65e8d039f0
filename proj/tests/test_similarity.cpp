#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <sstream>

#include "cricrules/error.hpp"
#include "cricrules/similarity.hpp"
#include "cricrules/synthetic.hpp"
#include "cricrules/tsne_kernels.hpp"
#include "support.hpp"

using namespace cricrules;

namespace {

std::vector<double> row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

// Perplexity of one conditional row, computed in bits.
double perplexity_bits(std::span<const double> row) {
  double h = 0.0;
  for (double p : row)
    if (p > 0.0) h -= p * std::log2(p);
  return std::exp2(h);
}

TsneParams quick(double perplexity = 5.0, std::size_t iterations = 400) {
  TsneParams p;
  p.perplexity = perplexity;
  p.iterations = iterations;
  return p;
}

}  // namespace

TEST_CASE("conditional affinities hit the target perplexity") {
  std::vector<int> labels;
  const auto data = testing::three_clusters(4, labels);
  const auto flat = row_major(data);
  const std::size_t n = 30;
  std::vector<double> d(n * n), p(n * n);
  kernels::serial::squared_distances(flat, n, 31, d);
  for (double perp : {2.0, 5.0, 9.0}) {
    auto stats = kernels::serial::conditional_affinities(d, n, perp, p);
    CHECK(stats.max_perplexity_error <= kernels::kPerplexityTolerance);
    CHECK(stats.max_steps <= kernels::kMaxBisectionSteps);
    for (std::size_t i = 0; i < n; ++i) {
      std::span<const double> row(p.data() + i * n, n);
      CHECK(row[i] == 0.0);
      double s = 0.0;
      for (double v : row) s += v;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(perplexity_bits(row) - perp) <= kernels::kPerplexityTolerance);
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  Rng rng(6);
  const std::size_t n = 57, dim = 9;
  std::vector<double> data(n * dim);
  for (auto& v : data) v = rng.normal();
  std::vector<double> d1(n * n), d2(n * n), p1(n * n), p2(n * n);
  kernels::serial::squared_distances(data, n, dim, d1);
  kernels::omp::squared_distances(data, n, dim, d2);
  CHECK(d1 == d2);
  auto s1 = kernels::serial::conditional_affinities(d1, n, 10.0, p1);
  auto s2 = kernels::omp::conditional_affinities(d2, n, 10.0, p2);
  CHECK(p1 == p2);
  CHECK(s1.max_perplexity_error == s2.max_perplexity_error);

  // symmetrize for the gradient
  std::vector<double> p(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] = (p1[i * n + j] + p1[j * n + i]) / (2.0 * n);
  std::vector<double> y(2 * n), g1(2 * n), g2(2 * n);
  for (auto& v : y) v = rng.normal();
  auto r1 = kernels::serial::gradient(p, y, n, 12.0, g1);
  auto r2 = kernels::omp::gradient(p, y, n, 12.0, g2);
  CHECK(r1.kl == doctest::Approx(r2.kl).epsilon(1e-12));
  for (std::size_t k = 0; k < 2 * n; ++k) CHECK(g1[k] == doctest::Approx(g2[k]).epsilon(1e-10));
}

TEST_CASE("parallel kernels do not depend on the thread count") {
  std::vector<int> labels;
  const auto data = testing::three_clusters(8, labels);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = tsne(data, quick());
  omp_set_num_threads(4);
  const auto b = tsne(data, quick());
  omp_set_num_threads(saved);
  CHECK(a.points == b.points);
  CHECK(a.final_kl == b.final_kl);
}

TEST_CASE("joint affinities are symmetric and sum to one") {
  std::vector<int> labels;
  const auto emb = tsne(testing::three_clusters(2, labels), quick(5.0, 10));
  const auto& p = emb.affinities;
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.minCoeff() >= 0.0);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(emb.max_perplexity_error <= 1e-3);
}

TEST_CASE("rigid motions of the input leave P unchanged") {
  std::vector<int> labels;
  const auto data = testing::three_clusters(12, labels);
  Eigen::MatrixXd q = Eigen::MatrixXd::Random(31, 31);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  const Eigen::MatrixXd rot = qr.householderQ();
  const Eigen::MatrixXd moved = (data * rot).rowwise() + Eigen::RowVectorXd::Constant(31, 3.5);
  const auto a = tsne(data, quick(5.0, 1));
  const auto b = tsne(moved, quick(5.0, 1));
  CHECK((a.affinities - b.affinities).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("identical inputs give uniform affinities") {
  const Eigen::MatrixXd data = Eigen::MatrixXd::Ones(8, 5);
  const auto emb = tsne(data, quick(2.0, 50));
  const double expected = 1.0 / (8.0 * 7.0);
  for (Eigen::Index i = 0; i < 8; ++i)
    for (Eigen::Index j = 0; j < 8; ++j) CHECK(emb.affinities(i, j) == doctest::Approx(i == j ? 0.0 : expected));
  CHECK(emb.points.allFinite());
}

TEST_CASE("clusters stay together and KL falls") {
  std::vector<int> labels;
  const auto data = testing::three_clusters(42, labels);
  TsneParams params;
  params.perplexity = 9.0;
  const auto emb = tsne(data, params);
  CHECK(testing::nn_purity(emb.points, labels) >= 0.9);
  REQUIRE(emb.kl_history.size() == params.iterations);
  CHECK(emb.final_kl < emb.kl_history[300]);
  CHECK(emb.points.allFinite());
}

TEST_CASE("same seed, same bits; different seed, different layout") {
  std::vector<int> labels;
  const auto data = testing::three_clusters(3, labels);
  auto p = quick();
  const auto a = tsne(data, p);
  const auto b = tsne(data, p);
  CHECK(a.points == b.points);
  CHECK(a.kl_history == b.kl_history);
  p.seed = 43;
  CHECK_FALSE(tsne(data, p).points == a.points);
}

TEST_CASE("infeasible parameters") {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  const Eigen::MatrixXd three = Eigen::MatrixXd::Random(3, 4);
  CHECK(code([&] { tsne(three, quick(0.5)); }) == ErrorCode::ParameterError);
  const Eigen::MatrixXd ten = Eigen::MatrixXd::Random(10, 4);
  CHECK(code([&] { tsne(ten, quick(3.5)); }) == ErrorCode::ParameterError);
  CHECK_NOTHROW(tsne(ten, quick(3.0, 5)));
  CHECK(code([&] { tsne(ten, quick(0.0)); }) == ErrorCode::ParameterError);
}

TEST_CASE("player vectors") {
  const auto& lex = FeatureLexicon::builtin();
  const auto m = build_matrix(generate_synthetic(planted_spec(), 4000, 21), lex);
  const auto ca = run_ca(m);

  SUBCASE("profile halves are distributions") {
    const auto v = player_vector(m, ca, "P", PlayerRole::batsman, Polarity::strength);
    REQUIRE(v.values.size() == 31);
    CHECK(v.top_bowling_feature == BowlingFeature::leg_line);
    double a = 0.0, b = 0.0;
    for (std::size_t k = 0; k < 12; ++k) a += v.values[k];
    for (std::size_t k = 12; k < 31; ++k) b += v.values[k];
    CHECK(a == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : v.values) CHECK(x >= 0.0);
    // first half is the attacked row profile
    const auto rows = row_sums(m);
    CHECK(v.values[index(BowlingFeature::leg_line)] ==
          doctest::Approx(static_cast<double>(m.at(BattingFeature::attacked, BowlingFeature::leg_line)) /
                          static_cast<double>(rows[index(BattingFeature::attacked)])));
  }
  SUBCASE("weakness points at the planted feature") {
    const auto v = player_vector(m, ca, "P", PlayerRole::batsman, Polarity::weakness);
    CHECK(v.top_bowling_feature == BowlingFeature::swing);
    CHECK(v.label() == "P - swing");
  }
  SUBCASE("coordinate mode pads to a fixed width") {
    const auto v = player_vector(m, ca, "P", PlayerRole::batsman, Polarity::strength, VectorMode::coordinate);
    CHECK(v.values.size() == 2 * kMaxDims);
    for (std::size_t k = ca.dims(); k < kMaxDims; ++k) CHECK(v.values[k] == 0.0);
  }
  SUBCASE("identical matrices give identical vectors") {
    const auto again = run_ca(m);
    CHECK(player_vector(m, ca, "P", PlayerRole::batsman, Polarity::strength).values ==
          player_vector(m, again, "P", PlayerRole::batsman, Polarity::strength).values);
  }
  SUBCASE("aspect polarity is rejected") {
    CHECK_THROWS_AS(player_vector(m, ca, "P", PlayerRole::batsman, Polarity::aspect), Error);
  }
}

TEST_CASE("embedding labels and csv") {
  const auto& lex = FeatureLexicon::builtin();
  const auto records = generate_synthetic(demo_spec(), 8000, 5);
  CorpusStore store(records, {});
  std::vector<PlayerVector> vectors;
  for (const auto& p : store.players(Role::batting)) {
    FilterTuple f;
    f.player = p;
    auto m = build_matrix(filter_records(store, f).records, lex);
    vectors.push_back(player_vector(m, run_ca(m), store.display_name(p), PlayerRole::batsman, Polarity::strength));
  }
  const auto emb = embed_tsne(vectors, quick(4.0, 300));
  REQUIRE(emb.labels.size() == vectors.size());
  CHECK(emb.labels[0] == "Ashby - short");
  const auto csv = embedding_csv(vectors, emb);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "player,polarity,bowling_feature,x,y");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == vectors.size());
}
