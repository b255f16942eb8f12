#include "fpsdp/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fpsdp {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index0) {
  Polynomial p(nvars);
  Monomial a(nvars, 0);
  a.at(index0) = 1;
  p.add_term(a, 1);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [a, c] : terms_) {
    int s = 0;
    for (int v : a) s += v;
    d = std::max(d, s);
  }
  return d;
}

Rational Polynomial::coeff(const Monomial& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& a, const Rational& c) {
  if (static_cast<int>(a.size()) != nvars_) throw std::invalid_argument("monomial length mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial r(a.nvars_);
  Monomial m(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) m[i] = ea[i] + eb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
  Rational s = 0;
  for (const auto& [a, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < a[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
  double s = 0;
  for (const auto& [a, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < a[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

Polynomial Polynomial::embedded(int new_nvars, int offset) const {
  if (offset + nvars_ > new_nvars) throw std::invalid_argument("embedding too small");
  Polynomial r(new_nvars);
  Monomial m(new_nvars, 0);
  for (const auto& [a, c] : terms_) {
    std::fill(m.begin(), m.end(), 0);
    for (int i = 0; i < nvars_; ++i) m[offset + i] = a[i];
    r.terms_.emplace(m, c);
  }
  return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < nvars_; ++i) {
      if (a[i] == 0) continue;
      os << "*" << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1));
      if (a[i] > 1) os << "^" << a[i];
    }
  }
  return os.str();
}

Polynomial differentiate(const Polynomial& p, int var) {
  if (var < 1 || var > p.nvars()) throw std::invalid_argument("differentiate: variable out of range");
  Polynomial r(p.nvars());
  for (const auto& [a, c] : p.terms()) {
    int k = a[var - 1];
    if (k == 0) continue;
    Monomial b = a;
    b[var - 1] = k - 1;
    r.add_term(b, c * k);
  }
  return r;
}

Polynomial substitute_zero(const Polynomial& p, const std::vector<int>& vars) {
  Polynomial r(p.nvars());
  for (const auto& [a, c] : p.terms()) {
    bool keep = true;
    for (int v : vars)
      if (a.at(v - 1) > 0) keep = false;
    if (keep) r.add_term(a, c);
  }
  return r;
}

Box::Box(std::vector<Rational> l, std::vector<Rational> h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box bounds size mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("box lower bound exceeds upper bound");
}

Box Box::unit(int n) { return Box(std::vector<Rational>(n, 0), std::vector<Rational>(n, 1)); }

bool Box::is_unit() const {
  for (int i = 0; i < dim(); ++i)
    if (lo[i] != 0 || hi[i] != 1) return false;
  return true;
}

Rational Box::volume() const {
  Rational v = 1;
  for (int i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
  return v;
}

Box Box::product(const Box& other) const {
  Box b = *this;
  b.lo.insert(b.lo.end(), other.lo.begin(), other.lo.end());
  b.hi.insert(b.hi.end(), other.hi.begin(), other.hi.end());
  return b;
}

Polynomial rescale_to_unit(const Polynomial& p, const Box& box) {
  const int n = p.nvars();
  if (box.dim() != n) throw std::invalid_argument("rescale: box dimension mismatch");
  if (box.is_unit()) return p;
  // (lo + w t)^a expanded, cached per (variable, power)
  std::vector<std::vector<std::vector<Rational>>> cache(n);
  auto expansion = [&](int i, int a) -> const std::vector<Rational>& {
    auto& ci = cache[i];
    if (static_cast<int>(ci.size()) <= a) {
      const Rational& lo = box.lo[i];
      Rational w = box.hi[i] - box.lo[i];
      for (int e = static_cast<int>(ci.size()); e <= a; ++e) {
        std::vector<Rational> c(e + 1);
        mpz_class binom = 1;
        for (int j = 0; j <= e; ++j) {
          Rational t = binom;
          for (int u = 0; u < e - j; ++u) t *= lo;
          for (int u = 0; u < j; ++u) t *= w;
          c[j] = t;
          binom = binom * (e - j) / (j + 1);
        }
        ci.push_back(std::move(c));
      }
    }
    return ci[a];
  };
  Polynomial r(n);
  for (const auto& [a, c] : p.terms()) {
    Polynomial t = Polynomial::constant(n, c);
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const auto& ex = expansion(i, a[i]);
      Polynomial f(n);
      Monomial m(n, 0);
      for (int j = 0; j <= a[i]; ++j) {
        m[i] = j;
        f.add_term(m, ex[j]);
      }
      t = t * f;
    }
    r += t;
  }
  return r;
}

Rational round_to_precision(const Rational& q, int precision) {
  if (sgn(q) == 0) return 0;
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  auto cmp_pow = [&](long ee) {
    mpz_class a = num, b = den;
    if (ee >= 0)
      b <<= static_cast<mp_bitcnt_t>(ee);
    else
      a <<= static_cast<mp_bitcnt_t>(-ee);
    return cmp(a, b);
  };
  while (cmp_pow(e) < 0) --e;
  while (cmp_pow(e + 1) >= 0) ++e;
  long shift = precision - 1 - e;
  mpz_class a = num, b = den;
  if (shift >= 0)
    a <<= static_cast<mp_bitcnt_t>(shift);
  else
    b <<= static_cast<mp_bitcnt_t>(-shift);
  mpz_class qt, r;
  mpz_fdiv_qr(qt.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  int c = cmp(mpz_class(2 * r), b);
  if (c > 0 || (c == 0 && mpz_odd_p(qt.get_mpz_t()))) ++qt;
  Rational res(qt);
  if (shift >= 0)
    mpq_div_2exp(res.get_mpq_t(), res.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  else
    mpq_mul_2exp(res.get_mpq_t(), res.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  return sgn(q) < 0 ? Rational(-res) : res;
}

bool representable(const Rational& q, int precision) { return round_to_precision(q, precision) == q; }

double to_double_down(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) > q) d = std::nextafter(d, -HUGE_VAL);
  return d;
}

double to_double_up(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) < q) d = std::nextafter(d, HUGE_VAL);
  return d;
}

double to_double_near(const Rational& q) { return round_to_precision(q, 53).get_d(); }

Rational exact_rational(double d) { return Rational(d); }

Rational parse_decimal(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  mpz_class mant = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      mant = mant * 10 + (ch - '0');
      if (dot) --scale;
      digits = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw std::invalid_argument("bad decimal literal: " + text);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    long ex = std::stol(text.substr(i));
    scale += ex;
    i = text.size();
  }
  if (i != text.size()) throw std::invalid_argument("bad decimal literal: " + text);
  Rational r(mant);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  if (scale >= 0)
    r *= Rational(p10);
  else
    r /= Rational(p10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

Expr make_const(const Rational& v, bool decimal) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  n->value.canonicalize();
  n->decimal = decimal;
  return n;
}

Expr make_var(int index) {
  if (index < 1) throw std::invalid_argument("variable index must be >= 1");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return n;
}

Expr make_unary(Op op, Expr a) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

Expr make_binary(Op op, Expr a, Expr b) {
  if (op == Op::Div) {
    if (!b || b->op != Op::Const) throw std::invalid_argument("division by a non-constant");
    if (sgn(b->value) == 0) throw std::invalid_argument("division by zero");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Expr make_pow(Expr a, int exponent) {
  if (exponent < 1) throw std::invalid_argument("power exponent must be >= 1");
  if (exponent == 1) return a;
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->a = std::move(a);
  n->exponent = exponent;
  return n;
}

Rational constant_value(const Node& c, int precision) {
  return c.decimal ? round_to_precision(c.value, precision) : c.value;
}

static void count_rec(const Expr& e, OpCounts& c) {
  switch (e->op) {
    case Op::Const:
    case Op::Var: return;
    case Op::Neg: ++c.neg; count_rec(e->a, c); return;
    case Op::Add: ++c.add; break;
    case Op::Sub: ++c.sub; break;
    case Op::Mul: ++c.mul; break;
    case Op::Div: ++c.div; count_rec(e->a, c); return;
    case Op::Pow: c.mul += e->exponent - 1; count_rec(e->a, c); return;
  }
  count_rec(e->a, c);
  count_rec(e->b, c);
}

OpCounts count_ops(const Expr& e) {
  OpCounts c;
  count_rec(e, c);
  return c;
}

int max_var_index(const Expr& e) {
  if (!e) return 0;
  if (e->op == Op::Var) return e->index;
  return std::max(max_var_index(e->a), max_var_index(e->b));
}

// Divisors are always taken at working precision.
static Rational divisor_value(const Node& c, int precision) {
  return round_to_precision(c.value, precision);
}

Polynomial expand(const Expr& e, int nvars, int precision) {
  switch (e->op) {
    case Op::Const: return Polynomial::constant(nvars, constant_value(*e, precision));
    case Op::Var:
      if (e->index > nvars) throw std::invalid_argument("variable index out of range");
      return Polynomial::variable(nvars, e->index - 1);
    case Op::Neg: return -expand(e->a, nvars, precision);
    case Op::Add: return expand(e->a, nvars, precision) + expand(e->b, nvars, precision);
    case Op::Sub: return expand(e->a, nvars, precision) - expand(e->b, nvars, precision);
    case Op::Mul: return expand(e->a, nvars, precision) * expand(e->b, nvars, precision);
    case Op::Div: return expand(e->a, nvars, precision) * Rational(1 / divisor_value(*e->b, precision));
    case Op::Pow: {
      Polynomial c = expand(e->a, nvars, precision);
      Polynomial r = c;
      for (int i = 1; i < e->exponent; ++i) r = r * c;
      return r;
    }
  }
  return Polynomial(nvars);
}

Rational eval_rational(const Polynomial& p, const std::vector<Rational>& point) { return p.eval(point); }

Rational eval_rational(const Expr& e, const std::vector<Rational>& point, int precision) {
  switch (e->op) {
    case Op::Const: return constant_value(*e, precision);
    case Op::Var: return point.at(e->index - 1);
    case Op::Neg: return -eval_rational(e->a, point, precision);
    case Op::Add: return eval_rational(e->a, point, precision) + eval_rational(e->b, point, precision);
    case Op::Sub: return eval_rational(e->a, point, precision) - eval_rational(e->b, point, precision);
    case Op::Mul: return eval_rational(e->a, point, precision) * eval_rational(e->b, point, precision);
    case Op::Div: return eval_rational(e->a, point, precision) / divisor_value(*e->b, precision);
    case Op::Pow: {
      Rational c = eval_rational(e->a, point, precision), r = c;
      for (int i = 1; i < e->exponent; ++i) r *= c;
      return r;
    }
  }
  return 0;
}

double round_double_to(double v, int precision) {
  if (precision == 53) return v;
  if (precision == 24) return static_cast<double>(static_cast<float>(v));
  return round_to_precision(Rational(v), precision).get_d();
}

double eval_float(const Expr& e, const std::vector<double>& point, int precision) {
  auto rnd = [precision](double v) { return round_double_to(v, precision); };
  switch (e->op) {
    case Op::Const: return round_to_precision(constant_value(*e, precision), precision).get_d();
    case Op::Var: return point.at(e->index - 1);
    case Op::Neg: return rnd(-eval_float(e->a, point, precision));
    case Op::Add: return rnd(eval_float(e->a, point, precision) + eval_float(e->b, point, precision));
    case Op::Sub: return rnd(eval_float(e->a, point, precision) - eval_float(e->b, point, precision));
    case Op::Mul: return rnd(eval_float(e->a, point, precision) * eval_float(e->b, point, precision));
    case Op::Div: return rnd(eval_float(e->a, point, precision) / divisor_value(*e->b, precision).get_d());
    case Op::Pow: {
      double c = eval_float(e->a, point, precision), r = c;
      for (int i = 1; i < e->exponent; ++i) r = rnd(r * c);
      return r;
    }
  }
  return 0;
}

static std::string rational_text(const Rational& q, bool decimal) {
  if (!decimal || q.get_den() == 1) return q.get_str();
  // exact decimal expansion (denominator is 2^a 5^b)
  mpz_class num = abs(q.get_num()), den = q.get_den();
  int digits = 0;
  while (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) {
    num *= 10;
    ++digits;
    if (digits > 2000) return q.get_str();
  }
  mpz_class v = num / den;
  std::string s = v.get_str();
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits - s.size() + 1, '0') + s;
  s.insert(s.size() - digits, ".");
  return (sgn(q) < 0 ? "-" : "") + s;
}

std::string to_string(const Expr& e) {
  switch (e->op) {
    case Op::Const: return rational_text(e->value, e->decimal);
    case Op::Var: return "x" + std::to_string(e->index);
    case Op::Neg: return "-(" + to_string(e->a) + ")";
    case Op::Add: return "(" + to_string(e->a) + " + " + to_string(e->b) + ")";
    case Op::Sub: return "(" + to_string(e->a) + " - " + to_string(e->b) + ")";
    case Op::Mul: return "(" + to_string(e->a) + " * " + to_string(e->b) + ")";
    case Op::Div: return "(" + to_string(e->a) + " / " + to_string(e->b) + ")";
    case Op::Pow: {
      std::string c = to_string(e->a);
      if (e->a->op != Op::Var) c = "(" + c + ")";
      return c + "^" + std::to_string(e->exponent);
    }
  }
  return "";
}

}  // namespace fpsdp
