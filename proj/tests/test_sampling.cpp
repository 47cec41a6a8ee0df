#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fkz/sampling.hpp"
#include "test_util.hpp"

using namespace fkz;

TEST_CASE("row and column probabilities") {
  const auto eye = sampler_from_rows(DenseMatrix::identity(2));
  CHECK(eye.probability(0) == doctest::Approx(0.5));
  CHECK(eye.probability(1) == doctest::Approx(0.5));

  const auto a = DenseMatrix::from_rows({{3, 4}, {0, 0.0001}});
  const auto rows = sampler_from_rows(a);
  CHECK(rows.probability(0) == doctest::Approx(25.0 / (25.0 + 1e-8)).epsilon(1e-14));
  const auto cols = sampler_from_cols(a);
  CHECK(cols.probability(0) == doctest::Approx(9.0 / (25.0 + 1e-8)).epsilon(1e-14));
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(sampler_from_rows(make_matrix(2, 2, {0, 0, 0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(sampler_from_rows(make_matrix(2, 2, {1, 1, 0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(NormSampler(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("inverse CDF edges") {
  const auto s = sampler_from_rows(DenseMatrix::identity(2));
  CHECK(s.index_for(0.0) == 0);
  CHECK(s.index_for(0.999) == 1);
  CHECK(s.index_for(0.4999) == 0);
  CHECK(s.index_for(0.5) == 1);
  const std::vector<double> w{1, 2, 3};
  const NormSampler t(w);
  CHECK(t.total() == 6.0);
  CHECK(t.cumulative()[1] == 3.0);
  CHECK(t.index_for(std::nextafter(1.0, 0.0)) == 2);
}

TEST_CASE("uniform has 53 bits in [0, 1)") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("same seed, same stream") {
  Rng a = Rng::stream(42, 3), b = Rng::stream(42, 3), c = Rng::stream(42, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs |= x != c.next_u64();
  }
  CHECK(differs);
  Rng g1(9), g2(9);
  for (int i = 0; i < 101; ++i) CHECK(g1.gaussian() == g2.gaussian());
}

TEST_CASE("gaussian moments") {
  Rng rng(17);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    s += g;
    s2 += g * g;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("draw frequencies match row norms") {
  Rng gen(21);
  const auto a = test::random_matrix(12, 4, gen);
  const auto s = sampler_from_rows(a);
  Rng rng(1234);
  const int n = 100000;
  std::vector<int> counts(a.rows(), 0);
  for (int i = 0; i < n; ++i) ++counts[s.draw(rng)];

  double chi2 = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double p = a.row_sqnorm(i) / a.frob_sq();
    CHECK(s.probability(i) == doctest::Approx(p).epsilon(1e-12));
    const double expected = n * p;
    const double sd = std::sqrt(n * p * (1.0 - p));
    CHECK(std::abs(counts[i] - expected) <= 4.0 * sd);
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(a.rows() - 1));
  const double pvalue = boost::math::cdf(boost::math::complement(dist, chi2));
  CHECK(pvalue > 0.001);
}

TEST_CASE("column draw frequencies") {
  Rng gen(22);
  const auto a = test::random_matrix(3, 9, gen);
  const auto s = sampler_from_cols(a);
  Rng rng(99);
  const int n = 100000;
  std::vector<int> counts(a.cols(), 0);
  for (int i = 0; i < n; ++i) ++counts[s.draw(rng)];
  double chi2 = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const double expected = n * a.col_sqnorm(j) / a.frob_sq();
    chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(a.cols() - 1));
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.001);
}
