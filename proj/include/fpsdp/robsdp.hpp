#pragma once

#include <vector>

#include "fpsdp/linalg.hpp"
#include "fpsdp/moments.hpp"

namespace fpsdp {

struct RobustOptions {
  // Exact rational factorization of every M_k(eps s_j z); above this order
  // only the exact rank is computed.
  int exact_factor_max_order = 4;
  Deadline deadline;
};

struct RobustLMI {
  int n = 0, k = 0, d = 0;
  Rational eps;
  RatMatrix M;                          // exact M_k(z), monomial basis, unit box
  std::vector<RatMatrix> Mj;            // exact M_k(eps s_j z), monomial basis, unit box
  std::vector<FullRankFactors> exact;   // M_j = 2 L R in rationals (empty above the order cap)
  std::vector<int> ranks;
  // Float LMI in the whitened Legendre frame, where M_k(z) is the identity.
  Matrix Mw;
  std::vector<Matrix> A;                // whitened M_j
  Matrix L, R;                          // [L^1 ... L^m], [R^1; ...; R^m] with A_j = 2 L^j R^j

  int block_dim() const { return d + static_cast<int>(L.cols()); }
};

RobustLMI build_robust_lmi(const std::vector<Polynomial>& s_list, const Box& boxX, const Rational& eps, int k,
                           const RobustOptions& opts = {});

// [[lambda M - tau L L^T, R^T], [R, tau I]]
Matrix lmi_matrix(const RobustLMI& lmi, double lambda, double tau);

struct IterationCap : std::runtime_error {
  double last_feasible;
  explicit IterationCap(double v) : std::runtime_error("robsdp search did not bracket the optimum"), last_feasible(v) {}
};

struct RobsdpResult {
  int k = 0;
  double bound = 0;        // lambda_k''
  double lambda = 0, tau = 0;
  double certificate = 0;  // min eigenvalue of the normalized LMI at (lambda, tau)
  bool certified = false;
  double witness = 0;      // lambda_max(sum sigma_j A_j) for a sign vector found by ascent; <= lambda_k'
  int evaluations = 0;
  int block_dim = 0;
  double seconds = 0;
};

RobsdpResult robsdp_bound(const RobustLMI& lmi, double lambda_hi);

}  // namespace fpsdp
