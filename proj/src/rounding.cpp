#include "fpsdp/rounding.hpp"

#include <map>

namespace fpsdp {

Rational RoundingModel::eps() const {
  Rational e = 1;
  mpq_div_2exp(e.get_mpq_t(), e.get_mpq_t(), static_cast<mp_bitcnt_t>(precision));
  return e;
}

Box RoundedProgram::error_box() const {
  Rational e = model.eps();
  return Box(std::vector<Rational>(m, -e), std::vector<Rational>(m, e));
}

Box RoundedProgram::full_box(const Box& x) const { return x.product(error_box()); }

Polynomial RoundedProgram::linear_form() const {
  const int N = n + m;
  Polynomial l(N);
  for (int j = 0; j < m; ++j) {
    for (const auto& [a, c] : s[j].terms()) {
      Monomial b(N, 0);
      for (int i = 0; i < n; ++i) b[i] = a[i];
      b[n + j] = 1;
      l.add_term(b, c);
    }
  }
  return l;
}

namespace {

struct TM {
  Polynomial p;
  Interval rem{0.0};
};

class Rounder {
public:
  Rounder(int n, int nmax, const RoundingModel& model, const RoundingOptions& opts, const Box* boxX)
      : n_(n), N_(nmax), model_(model), opts_(opts) {
    if (opts_.max_e_degree >= 0) {
      if (!boxX) throw std::invalid_argument("truncated rounding needs the input box");
      K_ = to_intervals(*boxX);
      Interval e(-model.eps_double(), model.eps_double());
      K_.resize(N_, e);
    }
    one_plus_eps_ = Interval(1.0) + Interval(-model.eps_double(), model.eps_double());
  }

  int m() const { return m_; }
  std::vector<ErrorSource> sources;

  TM visit(const Expr& e) {
    switch (e->op) {
      case Op::Const: {
        Rational c = constant_value(*e, model_.precision);
        TM t{Polynomial::constant(N_, c)};
        if (representable(c, model_.precision)) return t;
        return round(t, ErrorSource::Constant, "const " + c.get_str());
      }
      case Op::Var: {
        auto it = vars_.find(e->index);
        if (it != vars_.end()) return it->second;
        TM t{Polynomial::variable(N_, e->index - 1)};
        if (opts_.round_inputs) {
          t = round(t, ErrorSource::Input, "x" + std::to_string(e->index));
          sources.back().var = e->index;
        }
        vars_.emplace(e->index, t);
        return t;
      }
      case Op::Neg: {
        TM a = visit(e->a);
        return round(TM{-a.p, -a.rem}, ErrorSource::Neg, "neg");
      }
      case Op::Add: {
        TM a = visit(e->a);
        TM b = visit(e->b);
        return round(TM{a.p + b.p, a.rem + b.rem}, ErrorSource::Add, "add");
      }
      case Op::Sub: {
        TM a = visit(e->a);
        TM b = visit(e->b);
        return round(TM{a.p - b.p, a.rem - b.rem}, ErrorSource::Sub, "sub");
      }
      case Op::Mul: {
        TM a = visit(e->a);
        TM b = visit(e->b);
        return round(mul(a, b), ErrorSource::Mul, "mul");
      }
      case Op::Div: {
        TM a = visit(e->a);
        Rational c = 1 / round_to_precision(e->b->value, model_.precision);
        TM q{a.p * c, a.rem * Interval::from_rational(c)};
        return round(q, ErrorSource::Div, "div " + e->b->value.get_str());
      }
      case Op::Pow: {
        TM c = visit(e->a);
        TM acc = c;
        for (int i = 1; i < e->exponent; ++i) acc = round(mul(acc, c), ErrorSource::Mul, "pow");
        return acc;
      }
    }
    return TM{Polynomial(N_), Interval{0.0}};
  }

private:
  int edeg(const Monomial& a) const {
    int d = 0;
    for (int i = n_; i < N_; ++i) d += a[i];
    return d;
  }

  std::vector<Polynomial> by_degree(const Polynomial& p) const {
    std::vector<Polynomial> out;
    for (const auto& [a, c] : p.terms()) {
      int d = edeg(a);
      while (static_cast<int>(out.size()) <= d) out.emplace_back(N_);
      out[d].add_term(a, c);
    }
    return out;
  }

  TM mul(const TM& a, const TM& b) {
    if (opts_.max_e_degree < 0) return TM{a.p * b.p};
    const int D = opts_.max_e_degree;
    auto A = by_degree(a.p), B = by_degree(b.p);
    TM r{Polynomial(N_)};
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A[i].is_zero()) continue;
      for (std::size_t j = 0; j < B.size(); ++j) {
        if (B[j].is_zero()) continue;
        if (static_cast<int>(i + j) <= D)
          r.p += A[i] * B[j];
        else
          r.rem = r.rem + interval_eval(A[i], K_) * interval_eval(B[j], K_);
      }
    }
    Interval ia = a.p.is_zero() ? Interval(0.0) : interval_eval(a.p, K_);
    Interval ib = b.p.is_zero() ? Interval(0.0) : interval_eval(b.p, K_);
    r.rem = r.rem + a.rem * ib + b.rem * ia + a.rem * b.rem;
    return r;
  }

  // v -> v (1 + e_j) with a fresh error variable
  TM round(const TM& v, ErrorSource::Kind kind, const std::string& label) {
    int j = n_ + m_;
    ++m_;
    if (j >= N_) throw std::logic_error("error variable budget exceeded");
    sources.push_back({kind, 0, label});
    TM r{v.p, v.rem};
    Polynomial dropped(N_);
    for (const auto& [a, c] : v.p.terms()) {
      Monomial b = a;
      b[j] += 1;
      if (opts_.max_e_degree >= 0 && edeg(b) > opts_.max_e_degree)
        dropped.add_term(b, c);
      else
        r.p.add_term(b, c);
    }
    if (opts_.max_e_degree >= 0) {
      r.rem = v.rem * one_plus_eps_;
      if (!dropped.is_zero()) r.rem = r.rem + interval_eval(dropped, K_);
    }
    return r;
  }

  int n_, N_;
  RoundingModel model_;
  RoundingOptions opts_;
  IntervalBox K_;
  Interval one_plus_eps_;
  int m_ = 0;
  std::map<int, TM> vars_;
};

int count_consts(const Expr& e) {
  if (!e) return 0;
  return (e->op == Op::Const ? 1 : 0) + count_consts(e->a) + count_consts(e->b);
}

Polynomial restrict_vars(const Polynomial& p, int N) {
  Polynomial r(N);
  for (const auto& [a, c] : p.terms()) {
    for (std::size_t i = N; i < a.size(); ++i)
      if (a[i] != 0) throw std::logic_error("restrict_vars: nonzero exponent dropped");
    r.add_term(Monomial(a.begin(), a.begin() + N), c);
  }
  return r;
}

}  // namespace

RoundedProgram round_expression(const Expr& tree, int n, const RoundingModel& model, const RoundingOptions& opts,
                                const Box* boxX) {
  if (n < 1) throw std::invalid_argument("round_expression: n must be >= 1");
  if (max_var_index(tree) > n) throw std::invalid_argument("round_expression: variable index out of range");
  const int nmax = n + n + count_ops(tree).total() + count_consts(tree);
  Rounder rd(n, nmax, model, opts, boxX);
  TM fhat = rd.visit(tree);

  RoundedProgram rp;
  rp.n = n;
  rp.m = rd.m();
  rp.model = model;
  rp.sources = rd.sources;
  const int N = n + rp.m;
  rp.f = expand(tree, n, model.precision);
  rp.r = restrict_vars(fhat.p, N) - rp.f.embedded(N);
  rp.exact = opts.max_e_degree < 0;
  rp.h_tail = fhat.rem;

  rp.s.assign(rp.m, Polynomial(n));
  rp.h = Polynomial(N);
  for (const auto& [a, c] : rp.r.terms()) {
    int d = 0, which = -1;
    for (int j = 0; j < rp.m; ++j)
      if (a[n + j]) {
        d += a[n + j];
        which = j;
      }
    if (d == 0) throw std::logic_error("r(x, 0) is not identically zero");
    if (d == 1)
      rp.s[which].add_term(Monomial(a.begin(), a.begin() + n), c);
    else
      rp.h.add_term(a, c);
  }
  return rp;
}

std::vector<Polynomial> linear_part(const RoundedProgram& rp) {
  std::vector<int> evars;
  for (int j = 1; j <= rp.m; ++j) evars.push_back(rp.n + j);
  std::vector<Polynomial> out;
  for (int j = 1; j <= rp.m; ++j) {
    Polynomial d = substitute_zero(differentiate(rp.r, rp.n + j), evars);
    Polynomial sj(rp.n);
    for (const auto& [a, c] : d.terms()) sj.add_term(Monomial(a.begin(), a.begin() + rp.n), c);
    out.push_back(std::move(sj));
  }
  return out;
}

double remainder_bound(const RoundedProgram& rp, const Box& boxX) {
  Box K = rp.full_box(boxX);
  Interval v = rp.h.is_zero() ? Interval(0.0) : interval_eval(rp.h, K);
  v = v + rp.h_tail;
  return v.mag();
}

}  // namespace fpsdp
