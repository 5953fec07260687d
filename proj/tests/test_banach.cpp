#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "soficlab/pnorm.hpp"
#include "soficlab/rng.hpp"

using namespace soficlab;
using std::complex;

namespace {

Eigen::VectorXcd seeded_vector(int n, std::uint64_t seed) {
  SplitMix64 gen(seed);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = complex<double>(gen.next_double() - 0.5, gen.next_double() - 0.5);
  return v;
}

Eigen::MatrixXcd seeded_matrix(int r, int c, std::uint64_t seed) {
  SplitMix64 gen(seed);
  Eigen::MatrixXcd m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i)
      m(i, j) = complex<double>(gen.next_double() - 0.5, gen.next_double() - 0.5);
  return m;
}

// A unitary with no special structure: Q factor of a seeded matrix.
Eigen::MatrixXcd seeded_unitary(int n, std::uint64_t seed) {
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(seeded_matrix(n, n, seed)).householderQ();
}

}  // namespace

TEST_CASE("entrywise p-norms at hand-computed values") {
  Eigen::VectorXcd v(3);
  v << complex<double>(3, 4), complex<double>(0, 0), complex<double>(-5, 0);
  CHECK(lp_norm(v, 1.0) == doctest::Approx(10.0));
  CHECK(lp_norm(v, 2.0) == doctest::Approx(std::sqrt(50.0)));
  CHECK(lp_norm(v, kPInfinity) == doctest::Approx(5.0));
  CHECK(lp_norm(v, 3.0) == doctest::Approx(std::cbrt(125.0 + 125.0)));
  CHECK(lp_norm(Eigen::VectorXcd(), 2.0) == 0.0);
  CHECK_THROWS_AS(lp_norm(v, 0.5), std::invalid_argument);
}

TEST_CASE("p-norms are monotone in p and consistent at the ends") {
  const Eigen::VectorXcd v = seeded_vector(12, 5);
  double prev = lp_norm(v, 1.0);
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    const double cur = lp_norm(v, p);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  CHECK(lp_norm(v, kPInfinity) <= prev + 1e-12);
}

TEST_CASE("Schatten norms reduce to singular values") {
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = complex<double>(0, -4);  // singular value 4
  CHECK(schatten_norm(diag, 1.0) == doctest::Approx(7.0));
  CHECK(schatten_norm(diag, 2.0) == doctest::Approx(5.0));
  CHECK(schatten_norm(diag, kPInfinity) == doctest::Approx(4.0));

  // Rank one: u v* has the single singular value |u||v|.
  const Eigen::VectorXcd u = seeded_vector(4, 8);
  const Eigen::VectorXcd w = seeded_vector(4, 9);
  const Eigen::MatrixXcd rank_one = u * w.adjoint();
  const double sv = u.norm() * w.norm();
  for (double p : {1.0, 1.5, 2.0, kPInfinity}) {
    CHECK(schatten_norm(rank_one, p) == doctest::Approx(sv));
  }
}

TEST_CASE("unitary conjugation and left multiplication preserve Schatten norms") {
  const Eigen::MatrixXcd a = seeded_matrix(5, 5, 21);
  const Eigen::MatrixXcd q = seeded_unitary(5, 22);
  for (double p : {1.0, 1.7, 2.0, kPInfinity}) {
    CHECK(schatten_norm(schatten_conjugate(q, a), p) == doctest::Approx(schatten_norm(a, p)));
    CHECK(schatten_norm(schatten_left_multiply(q, a), p) == doctest::Approx(schatten_norm(a, p)));
  }
  // Non-unitary inputs are rejected rather than silently distorting norms.
  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(5, 5);
  not_unitary(0, 0) = 1.5;
  CHECK_THROWS_AS(schatten_conjugate(not_unitary, a), std::invalid_argument);
  CHECK_THROWS_AS(schatten_left_multiply(not_unitary, a), std::invalid_argument);
}

TEST_CASE("coordinate permutation is an isometry of every l^p") {
  const Permutation sigma({2, 0, 3, 1});
  const Eigen::VectorXcd v = seeded_vector(4, 30);
  const Eigen::VectorXcd moved = permutation_action(sigma, v);
  // Entry j of the moved vector came from sigma^{-1}(j).
  for (std::uint32_t j = 0; j < 4; ++j) CHECK(moved(sigma(j)) == v(j));
  for (double p : {1.0, 1.5, 2.0, kPInfinity}) {
    CHECK(lp_norm(moved, p) == doctest::Approx(lp_norm(v, p)));
  }
  CHECK((permutation_matrix(sigma) * v - moved).norm() == doctest::Approx(0.0));
}

TEST_CASE("product norm weights follow the declared profile") {
  ProductNormSpec spec;  // q = 1, weights 2^-j
  CHECK(spec.weight(1) == doctest::Approx(0.5));
  CHECK(spec.weight(3) == doctest::Approx(0.125));
  // A unit first block, zero elsewhere, scores exactly the first weight.
  CHECK(product_norm(spec, {1.0, 0.0, 0.0}) == doctest::Approx(0.5));

  ProductNormSpec leading;
  leading.leading_weight_one = true;
  CHECK(leading.weight(1) == doctest::Approx(1.0));
  CHECK(leading.weight(2) == doctest::Approx(0.5));
  CHECK(product_norm(leading, {1.0}) == doctest::Approx(1.0));

  ProductNormSpec q2;
  q2.q = 2.0;
  q2.leading_weight_one = true;
  // sqrt(1*1 + 0.5*4) = sqrt(3)
  CHECK(product_norm(q2, {1.0, 2.0}) == doctest::Approx(std::sqrt(3.0)));

  ProductNormSpec trunc;
  trunc.truncate_at = 1;
  CHECK(product_norm(trunc, {1.0, 100.0}) == doctest::Approx(0.5));

  // Bounded block sequences stay finite: geometric weights sum.
  std::vector<double> ones(40, 1.0);
  CHECK(product_norm(ProductNormSpec{}, ones) <= 1.0 + 1e-12);
}

TEST_CASE("operator norms are exact at p = 1, 2, inf") {
  Eigen::MatrixXcd t(2, 2);
  t << complex<double>(1, 0), complex<double>(-2, 0), complex<double>(0, 3), complex<double>(1, 0);
  const NormBracket n1 = operator_pnorm(t, 1.0, 1.0);
  CHECK(n1.lower == doctest::Approx(4.0));  // max column sum: |1| + |3i| = 4
  CHECK(n1.upper == doctest::Approx(4.0));
  const NormBracket ninf = operator_pnorm(t, kPInfinity, kPInfinity);
  CHECK(ninf.lower == doctest::Approx(4.0));  // max row sum: |3i| + |1| = 4
  CHECK(ninf.upper == doctest::Approx(4.0));
  const NormBracket n2 = operator_pnorm(t, 2.0, 2.0);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  CHECK(n2.lower == doctest::Approx(svd.singularValues()(0)));
  CHECK(n2.upper == doctest::Approx(n2.lower));
  CHECK_THROWS_AS(operator_pnorm(t, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("operator norm brackets stay ordered and tight on diagonal maps") {
  // For diagonal T the l^p -> l^p norm is max |d_i| at every p, so the
  // bracket must pinch onto that value.
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = complex<double>(0, 2);
  d(2, 2) = -1.0;
  for (double p : {1.3, 1.5, 1.9}) {
    const NormBracket b = operator_pnorm(d, p, p);
    CHECK(b.lower <= b.upper + 1e-12);
    CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-6));
  }
  // Generic matrices: bracket ordered, upper no larger than the p = 1 / p = 2
  // interpolation endpoints allow.
  const Eigen::MatrixXcd g = seeded_matrix(6, 6, 77);
  const double n1 = operator_pnorm(g, 1.0, 1.0).upper;
  const double n2 = operator_pnorm(g, 2.0, 2.0).upper;
  const NormBracket b = operator_pnorm(g, 1.5, 1.5);
  CHECK(b.lower <= b.upper + 1e-12);
  CHECK(b.upper <= std::max(n1, n2) + 1e-9);
  CHECK(b.lower >= 0.0);
}

TEST_CASE("matrix-valued column maps get certified brackets") {
  // Single column: the norm is that matrix's Schatten norm (exact at p=1,2).
  const Eigen::MatrixXcd m = seeded_matrix(4, 4, 41);
  for (double p : {1.0, 2.0}) {
    const NormBracket b = schatten_map_norm_bracket({m}, p);
    CHECK(b.lower == doctest::Approx(schatten_norm(m, p)));
    CHECK(b.upper == doctest::Approx(schatten_norm(m, p)));
  }
  // Matrix units E_ab are orthonormal in S^2; k of them give norm 1.
  std::vector<Eigen::MatrixXcd> units;
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(3, 3);
    e(i, (i + 1) % 3) = 1.0;
    units.push_back(e);
  }
  const NormBracket b2 = schatten_map_norm_bracket(units, 2.0);
  CHECK(b2.lower == doctest::Approx(1.0));
  CHECK(b2.upper == doctest::Approx(1.0));
  const NormBracket b15 = schatten_map_norm_bracket(units, 1.5);
  CHECK(b15.lower <= b15.upper + 1e-12);
  CHECK_THROWS_AS(schatten_map_norm_bracket(units, 3.0), std::invalid_argument);
}

TEST_CASE("flattening is the S^2 to l^2 isometry, column-major") {
  const Eigen::MatrixXcd m = seeded_matrix(3, 2, 55);
  const Eigen::VectorXcd f = flatten(m);
  REQUIRE(f.size() == 6);
  CHECK(f(0) == m(0, 0));
  CHECK(f(2) == m(2, 0));
  CHECK(f(3) == m(0, 1));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(schatten_norm(m, 2.0)));
}
