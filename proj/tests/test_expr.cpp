#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fpsdp/expr.hpp"
#include "oracle.hpp"

using namespace fpsdp;

namespace {

Polynomial P(const std::string& s, int n) { return expand(parse_expr(s, n), n); }

Polynomial random_poly(std::mt19937_64& rng, int n, int deg, int terms) {
  std::uniform_int_distribution<int> E(0, deg), C(-9, 9);
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    Monomial a(n);
    int left = deg;
    for (int i = 0; i < n; ++i) {
      a[i] = std::uniform_int_distribution<int>(0, left)(rng);
      left -= a[i];
    }
    p.add_term(a, oracle::frac(C(rng), 1 + E(rng)));
  }
  return p;
}

Expr random_tree(std::mt19937_64& rng, int n, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0: return make_var(std::uniform_int_distribution<int>(1, n)(rng));
    case 1: return make_const(oracle::frac(std::uniform_int_distribution<int>(-5, 5)(rng), 3));
    case 2: return make_unary(Op::Neg, random_tree(rng, n, depth - 1));
    case 3: return make_binary(Op::Add, random_tree(rng, n, depth - 1), random_tree(rng, n, depth - 1));
    case 4: return make_binary(Op::Sub, random_tree(rng, n, depth - 1), random_tree(rng, n, depth - 1));
    case 5: return make_binary(Op::Mul, random_tree(rng, n, depth - 1), random_tree(rng, n, depth - 1));
    default: return make_pow(random_tree(rng, n, depth - 1), 2);
  }
}

}  // namespace

TEST_CASE("parse: simple sum of a product and a constant") {
  Expr e = parse_expr("x1*x2 + 3", 2);
  REQUIRE(e->op == Op::Add);
  CHECK(e->a->op == Op::Mul);
  CHECK(e->a->a->index == 1);
  CHECK(e->a->b->index == 2);
  CHECK(e->b->op == Op::Const);
  CHECK(e->b->value == 3);
}

TEST_CASE("parse: kepler0 operation census") {
  Expr e = parse_expr("x2*x5 + x3*x6 - x2*x3 - x5*x6 + x1*(-x1 + x2 + x3 - x4 + x5 + x6)", 6);
  OpCounts c = count_ops(e);
  CHECK(c.neg == 1);
  CHECK(c.sub == 3);
  CHECK(c.add == 6);
  CHECK(c.mul == 5);
  CHECK(c.total() == 15);
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_expr("x1/0", 1), ParseError);
  CHECK_THROWS_AS(parse_expr("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_expr("x1 +", 1), ParseError);
  CHECK_THROWS_AS(parse_expr("x1/x1", 1), ParseError);
  CHECK_THROWS_AS(parse_expr("1/0 + x1", 1), ParseError);
}

TEST_CASE("parse: bracketing is kept") {
  Expr a = parse_expr("(x1 + x2) + x3", 3), b = parse_expr("x1 + (x2 + x3)", 3);
  CHECK(to_string(a) != to_string(b));
  CHECK(expand(a, 3) == expand(b, 3));
  Expr c = parse_expr("x1 - x2 - x3", 3);
  CHECK(c->op == Op::Sub);
  CHECK(c->a->op == Op::Sub);
}

TEST_CASE("parse: literals") {
  Expr neg = parse_expr("-2*x1", 1);
  CHECK(neg->op == Op::Mul);
  CHECK(neg->a->op == Op::Const);
  CHECK(neg->a->value == -2);
  Expr ratio = parse_expr("2/3*x1", 1);
  CHECK(ratio->a->op == Op::Const);
  CHECK(ratio->a->value == oracle::frac(2, 3));
  Expr dec = parse_expr("0.1*x1", 1);
  CHECK(dec->a->decimal);
  CHECK(dec->a->value == oracle::frac(1, 10));
  CHECK(constant_value(*dec->a, 53) == exact_rational(0.1));
  CHECK(constant_value(*dec->a, 24) == exact_rational(static_cast<double>(0.1f)));
}

TEST_CASE("program DSL") {
  Program p = parse_program(
      "# comment\nvars x1 in [-1, 2]; x2 in [0.5, 3/2];\nexpr x1*x2 - x1;\nprec single;\n");
  CHECK(p.n == 2);
  CHECK(p.box.lo[0] == -1);
  CHECK(p.box.hi[1] == oracle::frac(3, 2));
  CHECK(p.box.lo[1] == oracle::frac(1, 2));
  CHECK(p.precision == 24);
  Program q = parse_program("vars x1 in [0,1]; expr x1;");
  CHECK(q.precision == 53);
  CHECK_THROWS(parse_program("vars x2 in [0,1]; expr x2;"));
  CHECK_THROWS(parse_program("vars x1 in [2,1]; expr x1;"));
}

TEST_CASE("expand") {
  Expr t = make_binary(Op::Mul, make_binary(Op::Add, make_var(1), make_const(1)),
                       make_binary(Op::Sub, make_var(1), make_const(1)));
  CHECK(expand(t, 1) == P("x1^2 - 1", 1));
  CHECK(expand(make_const(0), 2).is_zero());
  Polynomial k0 = P("x2*x5 + x3*x6 - x2*x3 - x5*x6 + x1*(-x1 + x2 + x3 - x4 + x5 + x6)", 6);
  CHECK(k0.degree() == 2);
  // term-by-term: x2x5 x3x6 -x2x3 -x5x6 -x1^2 x1x2 x1x3 -x1x4 x1x5 x1x6, 10 monomials
  Polynomial ref(6);
  auto mono = [](std::initializer_list<int> v) { return Monomial(v); };
  ref.add_term(mono({0, 1, 0, 0, 1, 0}), 1);
  ref.add_term(mono({0, 0, 1, 0, 0, 1}), 1);
  ref.add_term(mono({0, 1, 1, 0, 0, 0}), -1);
  ref.add_term(mono({0, 0, 0, 0, 1, 1}), -1);
  ref.add_term(mono({2, 0, 0, 0, 0, 0}), -1);
  ref.add_term(mono({1, 1, 0, 0, 0, 0}), 1);
  ref.add_term(mono({1, 0, 1, 0, 0, 0}), 1);
  ref.add_term(mono({1, 0, 0, 1, 0, 0}), -1);
  ref.add_term(mono({1, 0, 0, 0, 1, 0}), 1);
  ref.add_term(mono({1, 0, 0, 0, 0, 1}), 1);
  CHECK(k0 == ref);
  CHECK(k0.size() == 10);
}

TEST_CASE("differentiate and substitute_zero") {
  // variables: x1, e1, e2
  Polynomial p = P("x2*x1 + x2*x3", 3);
  CHECK(differentiate(p, 2) == P("x1 + x3", 3));
  CHECK(differentiate(P("x1^2*x2", 2), 1) == P("2*x1*x2", 2));
  CHECK(differentiate(P("7", 2), 1).is_zero());
  CHECK(substitute_zero(P("x1 + x3", 3), {3}) == P("x1", 3));
  CHECK(substitute_zero(P("x2*x3", 3), {2, 3}).is_zero());
  CHECK(substitute_zero(P("x1^2", 3), {2}) == P("x1^2", 3));
}

TEST_CASE("evaluation") {
  Polynomial p = P("x1^2*x2 + 3*x1 - 2/3", 2);
  CHECK(p.eval({1, 1}) == oracle::frac(10, 3));
  Expr half = parse_expr("x1/2", 1);
  CHECK(eval_float(half, {1.5}) == 0.75);
  CHECK(eval_rational(half, {oracle::frac(3, 2)}) == oracle::frac(3, 4));
  CHECK(eval_float(parse_expr("x1*x2 + x1", 2), {0.0, 0.0}) == 0.0);
  // the float path rounds after every node
  Expr s = parse_expr("(x1 + x2) - x1", 2);
  CHECK(eval_float(s, {1.0, 1e-20}) == 0.0);
  CHECK(eval_float(s, {1.0, 1e-20}, 24) == 0.0);
  CHECK(eval_float(parse_expr("x1 + x2", 2), {1.0, std::ldexp(1.0, -30)}, 24) == 1.0);
}

TEST_CASE("binary rounding helpers") {
  CHECK(round_to_precision(oracle::frac(1, 3), 53) == exact_rational(1.0 / 3.0));
  CHECK(round_to_precision(oracle::frac(1, 3), 24) == exact_rational(static_cast<double>(1.0f / 3.0f)));
  CHECK(representable(oracle::frac(3, 4), 53));
  CHECK_FALSE(representable(oracle::frac(1, 10), 53));
  // ties to even: 1 + 2^-53 rounds to 1
  Rational tie = 1 + oracle::frac(1, mpz_class(1) << 53);
  CHECK(round_to_precision(tie, 53) == 1);
  Rational q(1, 10);
  CHECK(Rational(to_double_down(q)) <= q);
  CHECK(Rational(to_double_up(q)) >= q);
  CHECK(to_double_up(q) == std::nextafter(to_double_down(q), 1.0));
  CHECK(parse_decimal("6.36") == oracle::frac(159, 25));
  CHECK(parse_decimal("-1.5e-3") == oracle::frac(-3, 2000));
}

TEST_CASE("property: print / parse round trip") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Polynomial p = random_poly(rng, 3, 4, 6);
    Polynomial q = expand(parse_expr(p.to_string(), 3), 3);
    CHECK(p == q);
  }
}

TEST_CASE("property: Leibniz rule") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    Polynomial p = random_poly(rng, 3, 3, 4), q = random_poly(rng, 3, 3, 4);
    for (int v = 1; v <= 3; ++v)
      CHECK(differentiate(p * q, v) == differentiate(p, v) * q + p * differentiate(q, v));
  }
}

TEST_CASE("property: expanded and tree evaluation agree") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 60; ++t) {
    Expr e = random_tree(rng, 3, 4);
    Polynomial p = expand(e, 3);
    std::vector<Rational> x = {oracle::random_rational(rng, -2, 2), oracle::random_rational(rng, -2, 2),
                               oracle::random_rational(rng, -2, 2)};
    CHECK(eval_rational(p, x) == eval_rational(e, x));
  }
}

TEST_CASE("rescale to the unit box preserves values") {
  Polynomial p = P("x1^2*x2 - 3*x1 + x2", 2);
  Box b({-2, 1}, {3, oracle::frac(7, 2)});
  Polynomial q = rescale_to_unit(p, b);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Rational u = oracle::random_rational(rng, 0, 1), v = oracle::random_rational(rng, 0, 1);
    Rational x = b.lo[0] + (b.hi[0] - b.lo[0]) * u, y = b.lo[1] + (b.hi[1] - b.lo[1]) * v;
    CHECK(q.eval({u, v}) == p.eval({x, y}));
  }
}
