#pragma once

#include <string>

#include "fpsdp/geneig.hpp"
#include "fpsdp/mvbeta.hpp"
#include "fpsdp/robsdp.hpp"
#include "fpsdp/rounding.hpp"

namespace fpsdp {

enum class Method { Geneig, Mvbeta, Robsdp };

std::string method_name(Method m);
Method parse_method(const std::string& s);

struct FpsdpOptions {
  double time_limit = 0;     // seconds per one-sided bound, 0 = none
  double budget = 5e7;       // mvbeta pair cap
  int exact_rounding_max_m = 24;
};

struct BoundReport {
  Method method = Method::Geneig;
  int k = 0;
  int n = 0, m = 0;
  double l_upper = 0;   // lower bound on max l
  double l_lower = 0;   // upper bound on min l
  double l_k = 0;       // max(-l_lower, l_upper)
  double h_bar = 0;
  double final_bound = 0;
  double residual_upper = 0, residual_lower = 0;  // certificate residuals of the two sides
  bool certified = true;
  std::string status = "ok";  // ok | timeout | budget | error
  std::string message;
  double t_rounding = 0, t_hbar = 0, t_upper = 0, t_lower = 0;
  double seconds = 0;
};

// Lines 1-3 of the procedure, shared across methods and orders.
struct PreparedProgram {
  Expr tree;
  Box boxX;
  RoundingModel model;
  RoundedProgram rp;
  double h_bar = 0;
  double lambda_hi = 0;  // interval upper bound on eps * sum_j |s_j| over X
  double t_rounding = 0, t_hbar = 0;
};

PreparedProgram prepare(const Expr& tree, const Box& boxX, const RoundingModel& model,
                        const FpsdpOptions& opts = {});

BoundReport fpsdp(const PreparedProgram& prog, Method method, int k, const FpsdpOptions& opts = {});
BoundReport fpsdp(const Expr& tree, const Box& boxX, const RoundingModel& model, Method method, int k,
                  const FpsdpOptions& opts = {});

}  // namespace fpsdp
