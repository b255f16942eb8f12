#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpsdp {

using Rational = mpq_class;
using Monomial = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients.
// Variables are 0-based internally; the free functions taking a "var"
// argument use 1-based indices.
class Polynomial {
public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index0);

  int nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coeff(const Monomial& a) const;

  void add_term(const Monomial& a, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Rational eval(const std::vector<Rational>& point) const;
  double eval_double(const std::vector<double>& point) const;

  // Embed into a polynomial with new_nvars variables, old variable i
  // becoming variable offset + i.
  Polynomial embedded(int new_nvars, int offset = 0) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

private:
  int nvars_;
  std::map<Monomial, Rational> terms_;
};

Polynomial differentiate(const Polynomial& p, int var);
Polynomial substitute_zero(const Polynomial& p, const std::vector<int>& vars);

struct Box {
  std::vector<Rational> lo, hi;

  Box() = default;
  Box(std::vector<Rational> l, std::vector<Rational> h);
  static Box unit(int n);
  int dim() const { return static_cast<int>(lo.size()); }
  bool is_unit() const;
  Rational volume() const;
  Box product(const Box& other) const;
};

// p(lo + (hi - lo) t): the polynomial seen on the unit box.
Polynomial rescale_to_unit(const Polynomial& p, const Box& box);

// Binary floating-point helpers on exact rationals.
Rational round_to_precision(const Rational& q, int precision);
bool representable(const Rational& q, int precision);
double to_double_down(const Rational& q);
double to_double_up(const Rational& q);
double to_double_near(const Rational& q);
Rational exact_rational(double d);
Rational parse_decimal(const std::string& text);

// Expression trees.
enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Const;
  Rational value;       // Const: exact source value
  bool decimal = false; // Const: written as a decimal, rounded to precision on use
  int index = 0;        // Var: 1-based
  int exponent = 0;     // Pow
  Expr a, b;
};

Expr make_const(const Rational& v, bool decimal = false);
Expr make_var(int index);
Expr make_unary(Op op, Expr a);
Expr make_binary(Op op, Expr a, Expr b);
Expr make_pow(Expr a, int exponent);

// Value of a constant node as seen by a program at the given precision.
Rational constant_value(const Node& c, int precision);

struct OpCounts {
  int neg = 0, add = 0, sub = 0, mul = 0, div = 0;
  int total() const { return neg + add + sub + mul + div; }
};
// Operation nodes after Pow desugaring (x^n counts n-1 multiplications).
OpCounts count_ops(const Expr& e);
int max_var_index(const Expr& e);

Polynomial expand(const Expr& e, int nvars, int precision = 53);
Rational eval_rational(const Polynomial& p, const std::vector<Rational>& point);
Rational eval_rational(const Expr& e, const std::vector<Rational>& point, int precision = 53);
// Round-to-nearest at the given precision after every node (53 or 24).
double eval_float(const Expr& e, const std::vector<double>& point, int precision = 53);
double round_double_to(double v, int precision);

std::string to_string(const Expr& e);

// Parsing.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

Expr parse_expr(const std::string& text, int n_vars);

struct Program {
  int n = 0;
  Box box;
  Expr tree;
  int precision = 53;
};

Program parse_program(const std::string& text);

}  // namespace fpsdp
