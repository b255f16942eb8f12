#pragma once

#include <vector>

#include "fpsdp/expr.hpp"

namespace fpsdp {

// Directed rounding of single operations, decided from the exact
// rounding error (TwoSum / FMA), so exactly representable results stay exact.
double add_down(double a, double b);
double add_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);

struct Interval {
  double lo = 0, hi = 0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h);

  static Interval from_rational(const Rational& q);
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Rational& q) const;
  double mag() const;
  double width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval pow(const Interval& a, int n);
Interval abs(const Interval& a);
Interval hull(const Interval& a, const Interval& b);

using IntervalBox = std::vector<Interval>;
IntervalBox to_intervals(const Box& box);

Interval interval_eval(const Polynomial& p, const IntervalBox& box);
Interval interval_eval(const Polynomial& p, const Box& box);

// Upper bound on max |h| over the box.
double ia_bound(const Polynomial& h, const Box& box);

}  // namespace fpsdp
