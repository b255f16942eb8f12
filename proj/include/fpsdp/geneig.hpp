#pragma once

#include "fpsdp/linalg.hpp"
#include "fpsdp/moments.hpp"

namespace fpsdp {

struct GeneigResult {
  int k = 0;
  double bound = 0;      // reported lower bound on max p
  double raw = 0;        // largest generalized eigenvalue as computed
  double corrected = 0;  // after the residual correction
  double rayleigh = 0;   // exact Rayleigh quotient of the eigenvector, rounded down
  double residual = 0;   // lambda_min(bound M - B) scaled as in the check
  double tolerance = 0;
  int size = 0;
  double seconds = 0;
};

// Largest C(N+k, k) accepted; the exact matrices are dense.
constexpr int kGeneigMaxSize = 2000;

GeneigResult geneig_bound(const Polynomial& p, const Box& box, int k, const Deadline& dl = {});

}  // namespace fpsdp
