#pragma once

#include <string>
#include <vector>

#include "fpsdp/expr.hpp"
#include "fpsdp/interval.hpp"

namespace fpsdp {

struct RoundingModel {
  int precision = 53;

  Rational eps() const;
  double eps_double() const { return eps().get_d(); }
  static RoundingModel binary64() { return {53}; }
  static RoundingModel binary32() { return {24}; }
};

struct ErrorSource {
  enum Kind { Input, Constant, Neg, Add, Sub, Mul, Div };
  Kind kind;
  int var = 0;  // Input: 1-based variable index
  std::string label;
};

struct RoundingOptions {
  bool round_inputs = true;
  // Keep r exact up to this total degree in e; -1 keeps everything.
  // Truncated terms are enclosed over X x E and reported in h_tail.
  int max_e_degree = -1;
};

struct RoundedProgram {
  int n = 0;
  int m = 0;
  Polynomial f;                  // over x (n variables)
  Polynomial r;                  // over (x, e), exact part of fhat - f
  std::vector<Polynomial> s;     // s_j over x
  Polynomial h;                  // r minus its linear part
  Interval h_tail{0.0};          // enclosure of truncated terms (zero when exact)
  bool exact = true;
  std::vector<ErrorSource> sources;
  RoundingModel model;

  Box error_box() const;             // E = [-eps, eps]^m
  Box full_box(const Box& x) const;  // K = X x E
  Polynomial linear_form() const;    // l = sum_j e_j s_j over (x, e)
};

RoundedProgram round_expression(const Expr& tree, int n, const RoundingModel& model,
                                const RoundingOptions& opts = {}, const Box* boxX = nullptr);

std::vector<Polynomial> linear_part(const RoundedProgram& rp);

// Upper bound on max |h| over K, including the truncated tail.
double remainder_bound(const RoundedProgram& rp, const Box& boxX);

}  // namespace fpsdp
