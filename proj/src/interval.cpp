#include "fpsdp/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fpsdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// s + err == a + b exactly
inline double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) < 0 ? std::nextafter(s, -kInf) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) > 0 ? std::nextafter(s, kInf) : s;
}

double mul_down(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p;
  double e = std::fma(a, b, -p);
  // an underflowing product may lose bits that fma cannot see
  if (p != 0 && std::fabs(p) < 1e-290) return std::nextafter(p, -kInf);
  if (p == 0 && a != 0 && b != 0) return (a > 0) == (b > 0) ? 0.0 : -std::numeric_limits<double>::denorm_min();
  return e < 0 ? std::nextafter(p, -kInf) : p;
}

double mul_up(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p;
  double e = std::fma(a, b, -p);
  if (p != 0 && std::fabs(p) < 1e-290) return std::nextafter(p, kInf);
  if (p == 0 && a != 0 && b != 0) return (a > 0) == (b > 0) ? std::numeric_limits<double>::denorm_min() : 0.0;
  return e > 0 ? std::nextafter(p, kInf) : p;
}

Interval::Interval(double l, double h) : lo(l), hi(h) {
  if (!(l <= h)) throw std::invalid_argument("interval with lo > hi");
}

Interval Interval::from_rational(const Rational& q) { return Interval(to_double_down(q), to_double_up(q)); }

bool Interval::contains(const Rational& q) const { return Rational(lo) <= q && q <= Rational(hi); }

double Interval::mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }

Interval operator+(const Interval& a, const Interval& b) { return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)}; }

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  double c[4] = {mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)};
  double d[4] = {mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)};
  return {*std::min_element(c, c + 4), *std::max_element(d, d + 4)};
}

static double pow_down_pos(double x, int n) {
  double r = 1;
  for (int i = 0; i < n; ++i) r = mul_down(r, x);
  return r;
}

static double pow_up_pos(double x, int n) {
  double r = 1;
  for (int i = 0; i < n; ++i) r = mul_up(r, x);
  return r;
}

Interval pow(const Interval& a, int n) {
  if (n == 0) return Interval(1.0);
  if (n == 1) return a;
  if (n % 2 == 0) {
    if (a.lo >= 0) return {pow_down_pos(a.lo, n), pow_up_pos(a.hi, n)};
    if (a.hi <= 0) return {pow_down_pos(-a.hi, n), pow_up_pos(-a.lo, n)};
    return {0.0, pow_up_pos(std::max(-a.lo, a.hi), n)};
  }
  double lo = a.lo >= 0 ? pow_down_pos(a.lo, n) : -pow_up_pos(-a.lo, n);
  double hi = a.hi >= 0 ? pow_up_pos(a.hi, n) : -pow_down_pos(-a.hi, n);
  return {lo, hi};
}

Interval abs(const Interval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {0.0, std::max(-a.lo, a.hi)};
}

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

IntervalBox to_intervals(const Box& box) {
  IntervalBox r;
  r.reserve(box.dim());
  for (int i = 0; i < box.dim(); ++i) r.emplace_back(to_double_down(box.lo[i]), to_double_up(box.hi[i]));
  return r;
}

Interval interval_eval(const Polynomial& p, const IntervalBox& box) {
  if (static_cast<int>(box.size()) != p.nvars()) throw std::invalid_argument("interval_eval: dimension mismatch");
  Interval s(0.0);
  for (const auto& [a, c] : p.terms()) {
    Interval t = Interval::from_rational(c);
    for (int i = 0; i < p.nvars(); ++i)
      if (a[i] > 0) t = t * pow(box[i], a[i]);
    s = s + t;
  }
  return s;
}

Interval interval_eval(const Polynomial& p, const Box& box) { return interval_eval(p, to_intervals(box)); }

double ia_bound(const Polynomial& h, const Box& box) {
  if (h.is_zero()) return 0.0;
  return interval_eval(h, box).mag();
}

}  // namespace fpsdp
