#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fpsdp/interval.hpp"
#include "fpsdp/robsdp.hpp"
#include "fpsdp/rounding.hpp"
#include "oracle.hpp"

using namespace fpsdp;
using oracle::frac;

namespace {

Polynomial P(const std::string& s, int n) { return expand(parse_expr(s, n), n); }

Polynomial random_poly(std::mt19937_64& rng, int n, int deg, int terms) {
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    Monomial a(n);
    int left = deg;
    for (auto& d : a) left -= (d = std::uniform_int_distribution<int>(0, left)(rng));
    p.add_term(a, oracle::random_rational(rng, -4, 4, 11));
  }
  return p;
}

// eps * sum_j max |s_j| over the box, by interval evaluation
double abs_sum_upper(const std::vector<Polynomial>& s, const Box& b, const Rational& eps) {
  double t = 0;
  for (const auto& p : s) t = add_up(t, p.is_zero() ? 0.0 : interval_eval(p, b).mag());
  return mul_up(t, to_double_up(eps));
}

RobsdpResult solve(const std::vector<Polynomial>& s, const Box& b, const Rational& eps, int k) {
  RobustLMI lmi = build_robust_lmi(s, b, eps, k);
  return robsdp_bound(lmi, abs_sum_upper(s, b, eps));
}

}  // namespace

TEST_CASE("single uncertainty on the unit interval") {
  std::vector<Polynomial> s = {P("x1", 1)};
  RobustLMI lmi = build_robust_lmi(s, Box::unit(1), 1, 1);
  REQUIRE(lmi.Mj.size() == 1);
  RatMatrix want(2, 2);
  want(0, 0) = frac(1, 2);
  want(0, 1) = want(1, 0) = frac(1, 3);
  want(1, 1) = frac(1, 4);
  CHECK(lmi.Mj[0] == want);
  CHECK(lmi.ranks[0] == 2);
  CHECK(lmi.block_dim() == 4);
  REQUIRE(lmi.exact.size() == 1);
  CHECK(Rational(2) * (lmi.exact[0].L * lmi.exact[0].R) == want);
  RobsdpResult r = robsdp_bound(lmi, 1);
  const double exact = (3 + std::sqrt(3.0)) / 6;
  CHECK(std::fabs(r.bound - exact) <= 1e-6 * exact);
  CHECK(r.certified);
  CHECK(r.bound <= r.lambda);
  Matrix X = lmi_matrix(lmi, r.lambda, r.tau);
  CHECK(psd_check(X, 1e-9 * X.norm()).ok);
}

TEST_CASE("zero uncertainty") {
  std::vector<Polynomial> s = {Polynomial(2), Polynomial(2)};
  RobustLMI lmi = build_robust_lmi(s, Box::unit(2), 1, 2);
  CHECK(lmi.L.cols() == 0);
  CHECK(lmi.R.rows() == 0);
  CHECK(lmi.block_dim() == 6);
  RobsdpResult r = robsdp_bound(lmi, 0);
  CHECK(r.bound == 0);
}

TEST_CASE("kepler0 block dimension") {
  Expr t = parse_expr("x2*x5 + x3*x6 - x2*x3 - x5*x6 + x1*(-x1 + x2 + x3 - x4 + x5 + x6)", 6);
  RoundedProgram rp = round_expression(t, 6, RoundingModel::binary64());
  Rational lo = frac(4, 1), hi = frac(159, 25);
  Box X(std::vector<Rational>(6, lo), std::vector<Rational>(6, hi));
  RobustLMI lmi = build_robust_lmi(rp.s, X, rp.model.eps(), 1);
  CHECK(lmi.block_dim() <= 154);
  CHECK(lmi.d == 7);
  int sum = 0;
  for (std::size_t j = 0; j < rp.s.size(); ++j) {
    CHECK(lmi.ranks[j] == exact_rank(lmi.Mj[j]));
    sum += lmi.ranks[j];
  }
  CHECK(lmi.block_dim() == 7 + sum);
}

TEST_CASE("property: one uncertainty equals the vertex value") {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 8; ++t) {
    const int n = 1 + t % 2;
    std::vector<Polynomial> s = {random_poly(rng, n, 2, 3)};
    std::vector<Rational> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = oracle::random_rational(rng, -2, 0, 4);
      hi[i] = lo[i] + oracle::random_rational(rng, frac(1, 2), 2, 4);
    }
    Box b(lo, hi);
    for (int k = 1; k <= 2; ++k) {
      RobustLMI lmi = build_robust_lmi(s, b, 1, k);
      RobsdpResult r = robsdp_bound(lmi, abs_sum_upper(s, b, 1));
      double v = oracle::vertex_value(lmi.Mj, lmi.M);
      CAPTURE(t);
      CAPTURE(k);
      CHECK(std::fabs(r.bound - v) <= 1e-6 * std::max(v, 1e-12));
    }
  }
}

TEST_CASE("property: semidefinite uncertainty blocks equal the vertex value") {
  // squares give positive semidefinite localizers, where the vertex value is attained at sigma = 1
  std::vector<Polynomial> s = {P("(x1 - 1/3)^2", 2), P("(x1 + x2 - 1)^2", 2)};
  for (int k = 1; k <= 2; ++k) {
    RobustLMI lmi = build_robust_lmi(s, Box::unit(2), 1, k);
    RobsdpResult r = robsdp_bound(lmi, abs_sum_upper(s, Box::unit(2), 1));
    double v = oracle::vertex_value(lmi.Mj, lmi.M);
    CHECK(std::fabs(r.bound - v) <= 1e-6 * v);
  }
}

TEST_CASE("property: bounds are ordered between the witness and the interval bound") {
  std::mt19937_64 rng(82);
  const Rational eps = frac(1, mpz_class(1) << 53);
  for (int t = 0; t < 6; ++t) {
    std::vector<Polynomial> s;
    for (int j = 0; j < 3 + t; ++j) s.push_back(random_poly(rng, 2, 2, 3));
    Box b({-1, 0}, {2, 3});
    double hi = abs_sum_upper(s, b, eps), prev = 0;
    for (int k = 1; k <= 3; ++k) {
      RobsdpResult r = solve(s, b, eps, k);
      CAPTURE(k);
      CHECK(r.bound >= 0);
      CHECK(r.bound <= hi * (1 + 1e-9));
      CHECK(r.bound >= r.witness * (1 - 1e-9));
      CHECK(r.certified);
      CHECK(r.bound >= prev * (1 - 1e-6));
      prev = r.bound;
    }
  }
}

TEST_CASE("rounded program certificate") {
  Expr t = parse_expr("-x1*x2 - 2*x2*x3 - x1 - x3", 3);
  RoundedProgram rp = round_expression(t, 3, RoundingModel::binary64());
  Box X({-15, -15, -15}, {15, 15, 15});
  for (int k = 1; k <= 2; ++k) {
    RobustLMI lmi = build_robust_lmi(rp.s, X, rp.model.eps(), k);
    for (std::size_t j = 0; j < lmi.exact.size(); ++j) {
      const auto& f = lmi.exact[j];
      if (f.rank) CHECK(Rational(2) * (f.L * f.R) == lmi.Mj[j]);
    }
    RobsdpResult r = robsdp_bound(lmi, abs_sum_upper(rp.s, X, rp.model.eps()));
    CHECK(r.certified);
    Matrix M = lmi_matrix(lmi, r.lambda, r.tau);
    CHECK(M.rows() == lmi.block_dim());
  }
}
