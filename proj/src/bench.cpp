#include "fpsdp/bench.hpp"

#include <cmath>
#include <mutex>

namespace fpsdp {

namespace {

struct T1 {
  int k;
  double geneig, mvbeta, robsdp;  // 0 = not reported
};

struct T2 {
  int k;
  double geneig, mvbeta, robsdp;
};

Benchmark make(const std::string& id, const std::string& name, const std::string& source, const std::string& bracketing,
               int n, const std::string& lo, const std::string& hi, int m, double upper, double lower, double nlopt,
               std::vector<T1> t1, std::vector<T2> t2) {
  Benchmark b;
  b.id = id;
  b.name = name;
  b.source = source;
  b.bracketing = bracketing;
  b.n = n;
  b.m_expected = m;
  b.box = Box(std::vector<Rational>(n, parse_decimal(lo)), std::vector<Rational>(n, parse_decimal(hi)));
  b.tree = parse_expr(source, n);
  b.upper = upper;
  b.lower = lower;
  b.nlopt = nlopt;
  for (const auto& r : t1) {
    if (r.geneig > 0) b.ref_bounds[{Method::Geneig, r.k}] = r.geneig;
    if (r.mvbeta > 0) b.ref_bounds[{Method::Mvbeta, r.k}] = r.mvbeta;
    if (r.robsdp > 0) b.ref_bounds[{Method::Robsdp, r.k}] = r.robsdp;
  }
  for (const auto& r : t2) {
    b.ref_flops[{Method::Geneig, r.k}] = r.geneig;
    b.ref_flops[{Method::Mvbeta, r.k}] = r.mvbeta;
    b.ref_flops[{Method::Robsdp, r.k}] = r.robsdp;
  }
  return b;
}

std::vector<Benchmark> build_registry() {
  std::vector<Benchmark> v;
  v.push_back(make("a", "rigidBody1", "-x1*x2 - 2*x2*x3 - x1 - x3", "", 3, "-15", "15", 10, 5.33e-13, 2.28e-13,
                   4.80e-13,
                   {{1, 1.05e-15, 1.85e-16, 3.30e-14},
                    {2, 2.84e-14, 4.07e-15, 7.52e-14},
                    {3, 5.83e-14, 8.88e-15, 1.10e-13},
                    {4, 8.72e-14, 1.73e-14, 1.62e-13},
                    {8, 0, 0, 3.55e-13}},
                   {{1, 2.75e3, 3.50e3, 6.40e4}, {8, 8.43e15, 1.04e12, 4.50e9}}));
  v.push_back(make("b", "rigidBody2", "2*x1*x2*x3 + 6*x3^2 + -x2^2*x1*x3 - x2",
                   "explicit negation of the x2^2 x1 x3 term", 3, "-15", "15", 15, 6.48e-11, 2.19e-11, 6.40e-11,
                   {{1, 8.40e-14, 4.99e-14, 3.56e-12},
                    {2, 1.31e-12, 2.41e-13, 5.31e-12},
                    {3, 2.89e-12, 5.08e-13, 8.04e-12},
                    {4, 0, 0, 1.13e-11},
                    {7, 0, 0, 2.60e-11}},
                   {{1, 6.86e3, 9.99e3, 2.16e5}, {7, 1.12e17, 1.02e13, 5.84e9}}));
  v.push_back(make("c", "kepler0", "x2*x5 + x3*x6 - x2*x3 - x5*x6 + x1*(-x1 + x2 + x3 - x4 + x5 + x6)", "", 6, "4",
                   "6.36", 21, 1.18e-13, 2.23e-14, 1.02e-13,
                   {{1, 9.45e-15, 3.95e-15, 9.68e-15}, {2, 1.64e-14, 7.89e-15, 1.48e-14}, {3, 0, 0, 2.62e-14}},
                   {{1, 2.20e4, 3.12e4, 3.18e6}, {4, 3.12e13, 6.19e10, 8.58e10}}));
  v.push_back(make("d", "kepler1",
                   "x1*x4*(-x1 + x2 + x3 - x4) + x2*(x1 - x2 + x3 + x4) + x3*(x1 + x2 - x3 + x4) - x2*x3*x4 - x1*x3"
                   " - x1*x2 - x4",
                   "", 4, "4", "6.36", 28, 4.47e-13, 7.58e-14, 3.93e-13,
                   {{1, 3.01e-14, 1.41e-14, 1.49e-13},
                    {2, 5.38e-14, 2.45e-14, 2.22e-13},
                    {3, 0, 0, 3.04e-13},
                    {4, 0, 0, 4.06e-13}},
                   {{1, 3.60e4, 5.83e4, 2.75e6}, {4, 2.05e14, 2.98e11, 7.53e9}}));
  v.push_back(make("e", "kepler2",
                   "x1*x4*(-x1 + x2 + x3 - x4 + x5 + x6) + x2*x5*(x1 - x2 + x3 + x4 - x5 + x6)"
                   " + x3*x6*(x1 + x2 - x3 + x4 + x5 - x6) - x2*x3*x4 - x1*x3*x5 - x1*x2*x6 - x4*x5*x6",
                   "", 6, "4", "6.36", 42, 2.09e-12, 3.03e-13, 2.01e-12,
                   {{1, 9.72e-28, 5.55e-14, 2.88e-13}, {2, 0, 0, 4.48e-13}},
                   {{1, 1.18e5, 1.96e5, 2.55e7}, {4, 1.99e16, 9.99e12, 6.87e11}}));
  v.push_back(make("f", "sineTaylor", "x1*(1 - x1^2/6.0*(1 - x1^2/20.0*(1 - x1^2/42.0)))", "Horner form", 1,
                   "-1.57079632679", "1.57079632679", 13, 6.03e-16, 4.45e-16, 5.50e-16,
                   {{1, 8.34e-17, 1.50e-17, 1.98e-16},
                    {2, 1.52e-16, 4.50e-17, 2.31e-16},
                    {3, 2.07e-16, 7.95e-17, 2.72e-16},
                    {4, 0, 0, 3.04e-16},
                    {8, 0, 0, 4.43e-16}},
                   {{1, 3.38e3, 5.28e3, 1.76e4}, {8, 3.27e16, 3.45e12, 1.61e6}}));
  v.push_back(make("g", "sineOrder3", "0.954929658551372*x1 - 0.12900613773279798*x1^3", "", 1, "-2", "2", 6,
                   1.19e-15, 3.34e-16, 1.00e-15,
                   {{1, 1.09e-16, 4.93e-17, 3.99e-16},
                    {2, 2.43e-16, 1.18e-16, 4.83e-16},
                    {3, 3.68e-16, 1.78e-16, 5.62e-16},
                    {4, 4.72e-16, 2.33e-16, 6.37e-16},
                    {6, 6.28e-16, 2.87e-16, 7.85e-16},
                    {8, 0, 0, 9.30e-16}},
                   {{1, 5.12e2, 6.30e2, 1.73e3}, {8, 2.67e11, 4.08e8, 1.58e5}}));
  v.push_back(make("h", "sqroot", "1.0 + 0.5*x1 - 0.125*x1^2 + 0.0625*x1^3 - 0.0390625*x1^4", "", 1, "0", "1", 15,
                   1.29e-15, 4.45e-16, 7.10e-16,
                   {{1, 2.30e-16, 1.29e-16, 4.83e-16},
                    {2, 4.00e-16, 2.55e-16, 5.40e-16},
                    {3, 5.36e-16, 3.28e-16, 5.78e-16},
                    {4, 0, 0, 6.13e-16},
                    {7, 0, 0, 7.00e-16}},
                   {{1, 4.92e3, 7.92e3, 2.70e4}, {7, 1.48e16, 2.51e12, 1.73e6}}));
  v.push_back(make("i", "himmilbeau", "(x1^2 + x2 - 11)^2 + (x1 + x2^2 - 7)^2", "", 2, "-5", "5", 11, 1.43e-12,
                   1.47e-13, 1.42e-12,
                   {{1, 3.07e-14, 1.60e-14, 1.56e-13},
                    {2, 6.71e-14, 2.68e-14, 2.13e-13},
                    {3, 1.25e-13, 3.72e-14, 2.84e-13},
                    {4, 1.92e-13, 5.35e-14, 3.63e-13},
                    {8, 0, 0, 7.67e-13}},
                   {{1, 2.75e3, 3.87e3, 3.60e4}, {8, 8.43e15, 1.14e12, 1.22e8}}));
  return v;
}

}  // namespace

const std::vector<Benchmark>& benchmarks() {
  static const std::vector<Benchmark> reg = build_registry();
  return reg;
}

const Benchmark& benchmark(const std::string& id) {
  for (const auto& b : benchmarks())
    if (b.id == id || b.name == id) return b;
  throw UnknownBenchmark(id);
}

int model_m(const Benchmark& b, const RoundingModel& model) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, int> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(b.id, model.precision);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RoundingOptions ro;
  ro.max_e_degree = 1;
  int m = round_expression(b.tree, b.n, model, ro, &b.box).m;
  cache[key] = m;
  return m;
}

mpz_class flop_estimate(Method method, int n, int m, int k) {
  auto binom = [](long a, long b) {
    mpz_class c;
    if (a < 0 || b < 0 || b > a) return mpz_class(0);
    mpz_bin_uiui(c.get_mpz_t(), a, b);
    return c;
  };
  switch (method) {
    case Method::Geneig: {
      mpz_class c = binom(n + m + k, k);
      return c * c * c;
    }
    case Method::Mvbeta: {
      // the printed table carries the factor m
      if (n + m + k == 0) return 1;
      return std::max(m, 1) * binom(2 * n + 2 * m + 2 * k - 1, 2 * k);
    }
    case Method::Robsdp: {
      mpz_class c = binom(n + k, k);
      mpz_class mm = std::max(m, 1);
      return mm * mm * mm * c * c * c;
    }
  }
  return 0;
}

std::vector<double> random_point(const Box& box, int precision, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> x(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    Rational r;
    // rounding may leave the box next to a non-representable bound; draw again
    do {
      r = round_to_precision(box.lo[i] + (box.hi[i] - box.lo[i]) * Rational(U(rng)), precision);
    } while (r > box.hi[i] || r < box.lo[i]);
    x[i] = r.get_d();
  }
  return x;
}

double sample_lower_bound(const Expr& tree, const Box& boxX, const RoundingModel& model, long long n_samples,
                          std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("sample_lower_bound: n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  Rational best = 0;
  const int p = model.precision;
  std::vector<Rational> xq(boxX.dim());
  for (long long s = 0; s < n_samples; ++s) {
    std::vector<double> x = random_point(boxX, p, rng);
    for (int i = 0; i < boxX.dim(); ++i) xq[i] = x[i];
    Rational err = abs(Rational(eval_float(tree, x, p)) - eval_rational(tree, xq, p));
    if (err > best) best = err;
  }
  return to_double_down(best);
}

double abs_sum_lower_bound(const std::vector<Polynomial>& s_list, const Box& boxX, const Rational& eps,
                           long long budget, std::uint64_t seed) {
  const int n = boxX.dim();
  std::vector<const Polynomial*> active;
  for (const auto& s : s_list)
    if (!s.is_zero()) active.push_back(&s);
  if (active.empty()) return 0;
  std::vector<double> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = to_double_up(boxX.lo[i]);
    hi[i] = to_double_down(boxX.hi[i]);
  }
  auto a = [&](const std::vector<double>& x) {
    double v = 0;
    for (const auto* s : active) v += std::fabs(s->eval_double(x));
    return v;
  };
  auto search = [&](std::vector<double> x) {
    double fx = a(x);
    std::vector<double> step(n);
    for (int i = 0; i < n; ++i) step[i] = 0.25 * (hi[i] - lo[i]);
    for (int it = 0; it < 60; ++it) {
      bool improved = false;
      for (int i = 0; i < n; ++i)
        for (double dir : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[i] = std::clamp(x[i] + dir * step[i], lo[i], hi[i]);
          double fy = a(y);
          if (fy > fx) {
            x = y;
            fx = fy;
            improved = true;
          }
        }
      if (!improved)
        for (auto& h : step) h *= 0.5;
    }
    return std::make_pair(fx, x);
  };

  std::vector<std::vector<double>> starts;
  if (n <= 12)
    for (long mask = 0; mask < (1L << n); ++mask) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? hi[i] : lo[i];
      starts.push_back(x);
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (long long s = 0; s < std::max<long long>(budget, 1); ++s) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * U(rng);
    starts.push_back(x);
  }
  double best = -1;
  std::vector<double> xs;
  for (const auto& x0 : starts) {
    auto [fx, x] = search(x0);
    if (fx > best) {
      best = fx;
      xs = x;
    }
  }
  // certified value at the incumbent
  IntervalBox X(n);
  for (int i = 0; i < n; ++i) X[i] = Interval(xs[i]);
  double sum = 0;
  for (const auto* s : active) sum = add_down(sum, abs(interval_eval(*s, X)).lo);
  Interval e = Interval::from_rational(eps);
  return std::max(0.0, mul_down(sum, e.lo));
}

namespace {

struct NodeWalker {
  int p;
  const std::vector<double>& x;
  std::vector<NodeError> out;

  void record(const std::string& what, double fl, const Rational& exact) {
    if (sgn(exact) == 0) return;
    out.push_back({what, (Rational(fl) - exact) / exact});
  }

  double visit(const Expr& e) {
    auto rnd = [this](double v) { return round_double_to(v, p); };
    switch (e->op) {
      case Op::Const: {
        Rational c = constant_value(*e, p);
        double v = round_to_precision(c, p).get_d();
        record("constant", v, c);
        return v;
      }
      case Op::Var: {
        double v = x.at(e->index - 1);
        record("input x" + std::to_string(e->index), rnd(v), Rational(v));
        return rnd(v);
      }
      case Op::Neg: {
        double a = visit(e->a);
        double v = rnd(-a);
        record("neg", v, -Rational(a));
        return v;
      }
      case Op::Add:
      case Op::Sub:
      case Op::Mul: {
        double a = visit(e->a), b = visit(e->b);
        Rational qa(a), qb(b), ex;
        double v;
        if (e->op == Op::Add) {
          v = rnd(a + b);
          ex = qa + qb;
        } else if (e->op == Op::Sub) {
          v = rnd(a - b);
          ex = qa - qb;
        } else {
          v = rnd(a * b);
          ex = qa * qb;
        }
        record(e->op == Op::Add ? "add" : e->op == Op::Sub ? "sub" : "mul", v, ex);
        return v;
      }
      case Op::Div: {
        double a = visit(e->a);
        Rational c = round_to_precision(e->b->value, p);
        double v = rnd(a / c.get_d());
        record("div", v, Rational(a) / c);
        return v;
      }
      case Op::Pow: {
        double c = visit(e->a), r = c;
        for (int i = 1; i < e->exponent; ++i) {
          double v = rnd(r * c);
          record("mul", v, Rational(r) * Rational(c));
          r = v;
        }
        return r;
      }
    }
    return 0;
  }
};

}  // namespace

std::vector<NodeError> node_relative_errors(const Expr& tree, const std::vector<double>& x, int precision) {
  NodeWalker w{precision, x, {}};
  w.visit(tree);
  return std::move(w.out);
}

}  // namespace fpsdp
