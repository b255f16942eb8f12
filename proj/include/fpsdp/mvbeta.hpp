#pragma once

#include "fpsdp/moments.hpp"

namespace fpsdp {

struct BudgetExceeded : std::runtime_error {
  mpz_class count;
  explicit BudgetExceeded(const mpz_class& c)
      : std::runtime_error("enumeration budget exceeded: " + c.get_str() + " candidate pairs"), count(c) {}
};

struct MvbetaResult {
  int k = 0;
  double bound = 0;   // exact maximum rounded toward -inf
  Rational exact;     // exact maximum of the quotient sum
  Monomial eta, beta; // argmax
  long long candidates = 0;
  long long exact_evaluations = 0;
  double seconds = 0;
};

struct MvbetaOptions {
  double budget = 5e7;  // maximal number of (eta, beta) pairs
  Deadline deadline;
};

// Number of pairs (eta, beta) in N^{2N}_{2k}: C(2N + 2k, 2k).
mpz_class mvbeta_pair_count(int N, int k);

// Quotient sum at (eta, beta) on the unit box, exactly.
Rational mvbeta_value(const Polynomial& p_unit, const Monomial& eta, const Monomial& beta);

MvbetaResult mvbeta_bound(const Polynomial& p, const Box& box, int k, const MvbetaOptions& opts = {});

}  // namespace fpsdp
