#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fpsdp/interval.hpp"
#include "fpsdp/rounding.hpp"
#include "oracle.hpp"

using namespace fpsdp;

namespace {

Polynomial P(const std::string& s, int n) { return expand(parse_expr(s, n), n); }

Rational exact(double d) { return exact_rational(d); }

}  // namespace

TEST_CASE("directed operations bracket the exact result") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1e3, 1e3);
  for (int t = 0; t < 2000; ++t) {
    double a = U(rng), b = std::ldexp(U(rng), std::uniform_int_distribution<int>(-60, 60)(rng));
    Rational s = exact(a) + exact(b), p = exact(a) * exact(b);
    CHECK(exact(add_down(a, b)) <= s);
    CHECK(exact(add_up(a, b)) >= s);
    CHECK(exact(mul_down(a, b)) <= p);
    CHECK(exact(mul_up(a, b)) >= p);
    CHECK(add_up(a, b) <= std::nextafter(add_down(a, b), INFINITY));
  }
  // exact results stay exact
  CHECK(add_down(1.0, 2.0) == 3.0);
  CHECK(add_up(1.0, 2.0) == 3.0);
  CHECK(mul_down(0.5, 3.0) == 1.5);
  CHECK(mul_up(0.5, 3.0) == 1.5);
  CHECK(add_down(1.0, 1e-30) == 1.0);
  CHECK(add_up(1.0, 1e-30) == std::nextafter(1.0, 2.0));
}

TEST_CASE("interval_eval examples") {
  Interval s = interval_eval(P("x1 + x2", 2), Box({1, 3}, {2, 4}));
  CHECK(s.lo == 4);
  CHECK(s.hi == 6);
  Interval p = interval_eval(P("x1*x2", 2), Box({-1, 3}, {2, 4}));
  CHECK(p.lo == -4);
  CHECK(p.hi == 8);
  Interval q = interval_eval(P("x1^2 - x1", 1), Box({0}, {1}));
  CHECK(q.lo <= -0.25);
  CHECK(q.hi >= 0);
  CHECK(q.lo >= -1);
  CHECK(q.hi <= 1);
}

TEST_CASE("interval arithmetic basics") {
  Interval a(-1, 2), b(3, 4);
  CHECK((a * b).lo == -4);
  CHECK((a * b).hi == 8);
  CHECK((-a).lo == -2);
  CHECK((a - b).lo == -5);
  CHECK((a - b).hi == -1);
  Interval sq = pow(a, 2);
  CHECK(sq.lo == 0);
  CHECK(sq.hi == 4);
  CHECK(abs(a).lo == 0);
  CHECK(abs(Interval(-3, -2)).lo == 2);
  CHECK(a.mag() == 2);
  Interval t = Interval::from_rational(oracle::frac(1, 10));
  CHECK(t.contains(oracle::frac(1, 10)));
  CHECK(t.hi == std::nextafter(t.lo, 1.0));
}

TEST_CASE("ia_bound examples") {
  CHECK(ia_bound(Polynomial(3), Box::unit(3)) == 0);
  const double eps = std::ldexp(1.0, -53);
  Box k({-7, 2, -eps, -eps}, {5, 9, eps, eps});
  CHECK(ia_bound(P("x3*x4", 4), k) == eps * eps);
  RoundedProgram rp = round_expression(parse_expr("-x1*x2 - 2*x2*x3 - x1 - x3", 3), 3, RoundingModel::binary64());
  Box X({-15, -15, -15}, {15, 15, 15});
  double hb = ia_bound(rp.h, rp.full_box(X));
  CHECK(hb > 0);
  CHECK(hb <= 1e-26);
  CHECK(remainder_bound(rp, X) >= hb);
}

TEST_CASE("property: containment fuzzing") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 3;
    Polynomial p(n);
    for (int j = 0; j < 6; ++j) {
      Monomial a(n);
      for (auto& d : a) d = std::uniform_int_distribution<int>(0, 3)(rng);
      p.add_term(a, oracle::random_rational(rng, -5, 5, 13));
    }
    std::vector<Rational> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = oracle::random_rational(rng, -3, 1, 7);
      hi[i] = lo[i] + oracle::random_rational(rng, oracle::frac(1, 7), 3, 7);
    }
    Box box(lo, hi);
    Interval I = interval_eval(p, box);
    for (int s = 0; s < 1000; ++s) {
      std::vector<Rational> y(n);
      for (int i = 0; i < n; ++i) y[i] = oracle::random_rational(rng, lo[i], hi[i], 1009);
      REQUIRE(I.contains(p.eval(y)));
    }
  }
}

TEST_CASE("property: ia_bound dominates |h| on K") {
  std::mt19937_64 rng(22);
  for (const char* src : {"-x1*x2 - 2*x2*x3 - x1 - x3", "x1*x2*x3 + (x1 - x2)*(x2 + x3)", "x1^3 - 0.1*x2"}) {
    RoundedProgram rp = round_expression(parse_expr(src, 3), 3, RoundingModel::binary32());
    Box X({-2, -1, 0}, {3, 1, 2});
    Box K = rp.full_box(X);
    double hb = ia_bound(rp.h, K);
    for (int s = 0; s < 1000; ++s) {
      std::vector<Rational> y(K.dim());
      for (int i = 0; i < K.dim(); ++i) y[i] = oracle::random_rational(rng, K.lo[i], K.hi[i], 101);
      if (s % 4 == 0)
        for (int i = 0; i < K.dim(); ++i) y[i] = (s / 4 >> (i % 10)) & 1 ? K.hi[i] : K.lo[i];
      Rational v = rp.h.eval(y);
      REQUIRE(exact(hb) >= abs(v));
    }
  }
}
