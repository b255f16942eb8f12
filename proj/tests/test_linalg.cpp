#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fpsdp/linalg.hpp"
#include "oracle.hpp"

using namespace fpsdp;
using oracle::frac;

namespace {

Matrix M2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix random_sym(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> U(-1, 1);
  Matrix A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = U(rng);
  return A;
}

Matrix random_spd(std::mt19937_64& rng, int d) {
  Matrix G = random_sym(rng, d);
  return G * G.transpose() + Matrix::Identity(d, d);
}

RatMatrix random_rat_sym(std::mt19937_64& rng, int d, int rank) {
  // sum of rank outer products of small integer vectors
  std::uniform_int_distribution<int> U(-3, 3);
  RatMatrix M(d, d);
  for (int r = 0; r < rank; ++r) {
    std::vector<int> v(d);
    for (auto& x : v) x = U(rng);
    int sign = r % 2 ? -1 : 1;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) += sign * v[i] * v[j];
  }
  return M;
}

void check_2lr(const RatMatrix& M, const FullRankFactors& f) {
  CHECK(f.L.rows == M.rows);
  CHECK(f.L.cols == f.rank);
  CHECK(f.R.rows == f.rank);
  if (f.rank == 0) {
    for (const auto& v : M.a) CHECK(v == 0);
    return;
  }
  CHECK(Rational(2) * (f.L * f.R) == M);
}

}  // namespace

TEST_CASE("cholesky examples") {
  Matrix C = cholesky(M2(4, 2, 2, 3));
  CHECK(C(0, 0) == doctest::Approx(2));
  CHECK(C(0, 1) == 0);
  CHECK(C(1, 0) == doctest::Approx(1));
  CHECK(C(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK((cholesky(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() == 0);
  CHECK_THROWS_AS(cholesky(M2(1, 2, 2, 1)), NotPositiveDefinite);
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    Matrix A = random_spd(rng, 1 + t);
    Matrix L = cholesky(A);
    CHECK((A - L * L.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * A.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("eigenvalue examples") {
  Matrix D = Matrix::Zero(3, 3);
  D.diagonal() << 3, 1, 2;
  auto v = sym_eigvals(D);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(1));
  CHECK(v[1] == doctest::Approx(2));
  CHECK(v[2] == doctest::Approx(3));
  auto w = sym_eigvals(M2(0, 1, 1, 0));
  CHECK(w[0] == doctest::Approx(-1));
  CHECK(w[1] == doctest::Approx(1));
  auto u = sym_eigvals(M2(2, 1, 1, 2));
  CHECK(u[0] == doctest::Approx(1));
  CHECK(u[1] == doctest::Approx(3));
}

TEST_CASE("property: 2x2 eigenvalues against the characteristic polynomial") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 200; ++t) {
    Matrix A = random_sym(rng, 2);
    double tr = A.trace(), det = A.determinant(), disc = std::sqrt(tr * tr / 4 - det);
    auto v = sym_eigvals(A);
    auto j = jacobi_eigen(A).values;
    double scale = 1e-10 * std::max(1.0, A.norm());
    CHECK(std::fabs(v[0] - (tr / 2 - disc)) <= scale);
    CHECK(std::fabs(v[1] - (tr / 2 + disc)) <= scale);
    CHECK(std::fabs(j[0] - (tr / 2 - disc)) <= scale);
    CHECK(std::fabs(j[1] - (tr / 2 + disc)) <= scale);
  }
}

TEST_CASE("property: reconstruction and Jacobi cross-check") {
  std::mt19937_64 rng(53);
  for (int d : {1, 2, 5, 13, 30, 50}) {
    Matrix A = random_sym(rng, d);
    double amax = A.cwiseAbs().maxCoeff();
    EigenDecomposition e = sym_eigen(A), j = jacobi_eigen(A);
    Matrix R = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    Matrix RJ = j.vectors * j.values.asDiagonal() * j.vectors.transpose();
    CHECK((A - R).cwiseAbs().maxCoeff() <= 1e-9 * amax);
    CHECK((A - RJ).cwiseAbs().maxCoeff() <= 1e-9 * amax);
    for (int i = 0; i < d; ++i) {
      CHECK(std::fabs(e.values[i] - j.values[i]) <= 1e-10 * std::max(1.0, A.norm()));
      if (i) CHECK(e.values[i - 1] <= e.values[i]);
    }
  }
}

TEST_CASE("generalized eigenvalue examples") {
  Matrix B = Matrix::Zero(2, 2);
  B.diagonal() << 5, 1;
  CHECK(gen_eig_max(B, Matrix::Identity(2, 2)) == doctest::Approx(5));
  Matrix A = M2(1, 0.5, 0.5, 1.0 / 3);
  CHECK(gen_eig_max(A, A) == doctest::Approx(1));
  double g = gen_eig_max(M2(0.5, 1.0 / 3, 1.0 / 3, 0.25), A);
  CHECK(std::fabs(g - (3 + std::sqrt(3.0)) / 6) <= 1e-12);
  // the exact bisection oracle encloses the same value
  RatMatrix Bq(2, 2), Aq(2, 2);
  Bq(0, 0) = frac(1, 2);
  Bq(0, 1) = Bq(1, 0) = frac(1, 3);
  Bq(1, 1) = frac(1, 4);
  Aq(0, 0) = 1;
  Aq(0, 1) = Aq(1, 0) = frac(1, 2);
  Aq(1, 1) = frac(1, 3);
  auto [lo, hi] = oracle::gen_eig_max(Bq, Aq, 0, 1);
  CHECK(lo <= g + 1e-14);
  CHECK(g <= hi + 1e-14);
  CHECK_THROWS_AS(gen_eig_max(B, M2(1, 2, 2, 1)), NotPositiveDefinite);
}

TEST_CASE("property: generalized eigenvalue is congruence invariant") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 6;
    Matrix A = random_spd(rng, d), B = random_sym(rng, d);
    Matrix P = random_sym(rng, d) + 3 * Matrix::Identity(d, d);
    double g0 = gen_eig_max(B, A), g1 = gen_eig_max(P.transpose() * B * P, P.transpose() * A * P);
    CHECK(std::fabs(g0 - g1) <= 1e-8 * std::max(1.0, std::fabs(g0)));
  }
}

TEST_CASE("psd_check examples") {
  PsdCheck id = psd_check(Matrix::Identity(3, 3), 1e-12);
  CHECK(id.min_eigenvalue == doctest::Approx(1));
  CHECK(id.ok);
  PsdCheck ind = psd_check(M2(1, 0, 0, -1), 1e-12);
  CHECK(ind.min_eigenvalue == doctest::Approx(-1));
  CHECK_FALSE(ind.ok);
  PsdCheck z = psd_check(Matrix::Zero(2, 2), 1e-12);
  CHECK(z.min_eigenvalue == 0);
  CHECK(z.ok);
}

TEST_CASE("full rank factorization examples") {
  RatMatrix ones(2, 2);
  for (auto& v : ones.a) v = 1;
  FullRankFactors f = full_rank_factorization(ones);
  REQUIRE(f.rank == 1);
  CHECK(f.L(0, 0) == 1);
  CHECK(f.L(1, 0) == 1);
  CHECK(f.R(0, 0) == frac(1, 2));
  CHECK(f.R(0, 1) == frac(1, 2));
  check_2lr(ones, f);
  FullRankFactors z = full_rank_factorization(RatMatrix(3, 3));
  CHECK(z.rank == 0);
  check_2lr(RatMatrix(3, 3), z);
  RatMatrix mx = localizing_matrix(Polynomial::variable(1, 0), 1, Box::unit(1));
  FullRankFactors fx = full_rank_factorization(mx);
  CHECK(fx.rank == 2);
  check_2lr(mx, fx);
  // zero diagonal, needs off-diagonal pivots
  RatMatrix od(2, 2);
  od(0, 1) = od(1, 0) = 1;
  FullRankFactors fo = full_rank_factorization(od);
  CHECK(fo.rank == 2);
  check_2lr(od, fo);
}

TEST_CASE("property: factorization rank and exact reconstruction") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 40; ++t) {
    const int d = 1 + t % 9, rank = t % (d + 1);
    RatMatrix M = random_rat_sym(rng, d, rank);
    FullRankFactors f = full_rank_factorization(M);
    CHECK(f.rank == exact_rank(M));
    CHECK(f.rank <= rank);
    check_2lr(M, f);
  }
  // localizing matrices of odd polynomials on a symmetric box
  Box sym({-1, -1}, {1, 1});
  for (int k = 1; k <= 3; ++k) {
    RatMatrix M = localizing_matrix(expand(parse_expr("x1 - x1*x2^2", 2), 2), k, sym);
    FullRankFactors f = full_rank_factorization(M);
    CHECK(f.rank == exact_rank(M));
    check_2lr(M, f);
  }
}

TEST_CASE("to_double rounds entries") {
  RatMatrix M(1, 1);
  M(0, 0) = frac(1, 3);
  CHECK(to_double(M)(0, 0) == 1.0 / 3.0);
}
