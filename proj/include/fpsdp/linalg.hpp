#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "fpsdp/moments.hpp"

namespace fpsdp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct NotPositiveDefinite : std::runtime_error {
  NotPositiveDefinite() : std::runtime_error("matrix is not positive definite") {}
};

struct NoConvergence : std::runtime_error {
  NoConvergence() : std::runtime_error("eigensolver did not converge") {}
};

// Symmetric matrix from exact rationals, rounded to nearest.
Matrix to_double(const RatMatrix& M);

// Lower-triangular C with A = C C^T.
Matrix cholesky(const Matrix& A);

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // columns
};

std::vector<double> sym_eigvals(const Matrix& A);
EigenDecomposition sym_eigen(const Matrix& A);

// Cyclic Jacobi rotations; slower, used to cross-check sym_eigen.
EigenDecomposition jacobi_eigen(const Matrix& A, int max_sweeps = 100);

// Largest eigenvalue of C^{-1} B C^{-T}, A = C C^T.
double gen_eig_max(const Matrix& B, const Matrix& A);

struct PsdCheck {
  double min_eigenvalue;
  bool ok;
};
PsdCheck psd_check(const Matrix& A, double tol);

// M = 2 L R exactly, L is d x r, R is r x d.
struct FullRankFactors {
  RatMatrix L, R;
  int rank = 0;
};
FullRankFactors full_rank_factorization(const RatMatrix& M);
int exact_rank(const RatMatrix& M);  // fraction-free elimination

}  // namespace fpsdp
