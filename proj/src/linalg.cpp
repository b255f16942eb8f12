#include "fpsdp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fpsdp {

Matrix to_double(const RatMatrix& M) {
  Matrix A(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) A(i, j) = to_double_near(M(i, j));
  return A;
}

Matrix cholesky(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  double scale = n ? A.cwiseAbs().maxCoeff() : 0.0;
  double tol = scale * 1e-300;
  Matrix C = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double s = A(j, j);
    for (int k = 0; k < j; ++k) s -= C(j, k) * C(j, k);
    if (!(s > tol)) throw NotPositiveDefinite();
    double d = std::sqrt(s);
    C(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      double t = A(i, j);
      for (int k = 0; k < j; ++k) t -= C(i, k) * C(j, k);
      C(i, j) = t / d;
    }
  }
  return C;
}

EigenDecomposition sym_eigen(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success) throw NoConvergence();
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<double> sym_eigvals(const Matrix& A) {
  if (A.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NoConvergence();
  const Vector& v = es.eigenvalues();
  return std::vector<double>(v.data(), v.data() + v.size());
}

EigenDecomposition jacobi_eigen(const Matrix& A0, int max_sweeps) {
  const int n = static_cast<int>(A0.rows());
  Matrix A = A0;
  Matrix V = Matrix::Identity(n, n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0, tot = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        tot += A(i, j) * A(i, j);
        if (i != j) off += A(i, j) * A(i, j);
      }
    if (off <= 1e-30 * tot || off == 0) {
      std::vector<int> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return A(a, a) < A(b, b); });
      EigenDecomposition out{Vector(n), Matrix(n, n)};
      for (int k = 0; k < n; ++k) {
        out.values(k) = A(idx[k], idx[k]);
        out.vectors.col(k) = V.col(idx[k]);
      }
      return out;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = A(p, q);
        if (apq == 0) continue;
        double theta = (A(q, q) - A(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  throw NoConvergence();
}

double gen_eig_max(const Matrix& B, const Matrix& A) {
  Matrix C = cholesky(A);
  auto tri = C.triangularView<Eigen::Lower>();
  Matrix X = tri.solve(B);
  Matrix S = tri.solve(X.transpose());
  S = 0.5 * (S + S.transpose()).eval();
  return sym_eigvals(S).back();
}

PsdCheck psd_check(const Matrix& A, double tol) {
  if (A.rows() == 0) return {0.0, true};
  double mn = sym_eigvals(A).front();
  return {mn, mn >= -tol};
}

int exact_rank(const RatMatrix& M0) {
  // Bareiss fraction-free elimination on the integer-scaled matrix
  const int r = M0.rows, c = M0.cols;
  mpz_class lcm = 1;
  for (const auto& v : M0.a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> A(static_cast<std::size_t>(r) * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      Rational v = M0(i, j) * Rational(lcm);
      A[static_cast<std::size_t>(i) * c + j] = v.get_num();
    }
  auto at = [&](int i, int j) -> mpz_class& { return A[static_cast<std::size_t>(i) * c + j]; };
  mpz_class prev = 1;
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (sgn(at(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < c; ++j) std::swap(at(piv, j), at(rank, j));
    for (int i = rank + 1; i < r; ++i) {
      for (int j = col + 1; j < c; ++j) {
        mpz_class v = at(rank, col) * at(i, j) - at(i, col) * at(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = v;
      }
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

FullRankFactors full_rank_factorization(const RatMatrix& M) {
  // Complete-pivoting elimination: P M Q = Lu U, so M = (P^T Lu)(U Q^T),
  // with L the unit-lower columns and R = U / 2.
  const int d = M.rows;
  if (M.cols != d) throw std::invalid_argument("full_rank_factorization: matrix not square");
  RatMatrix A = M;
  std::vector<int> prow(d), pcol(d);
  std::iota(prow.begin(), prow.end(), 0);
  std::iota(pcol.begin(), pcol.end(), 0);
  RatMatrix Lw(d, d);  // multipliers in permuted row order
  int r = 0;
  for (; r < d; ++r) {
    // pivot: first nonzero in the remaining block, preferring the diagonal
    int bi = -1, bj = -1;
    for (int t = r; t < d && bi < 0; ++t)
      if (sgn(A(t, t)) != 0) bi = bj = t;
    for (int i = r; i < d && bi < 0; ++i)
      for (int j = r; j < d; ++j)
        if (sgn(A(i, j)) != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi < 0) break;
    if (bi != r) {
      for (int j = 0; j < d; ++j) std::swap(A(bi, j), A(r, j));
      for (int j = 0; j < r; ++j) std::swap(Lw(bi, j), Lw(r, j));
      std::swap(prow[bi], prow[r]);
    }
    if (bj != r) {
      for (int i = 0; i < d; ++i) std::swap(A(i, bj), A(i, r));
      std::swap(pcol[bj], pcol[r]);
    }
    const Rational piv = A(r, r);
    Lw(r, r) = 1;
    for (int i = r + 1; i < d; ++i) {
      if (sgn(A(i, r)) == 0) continue;
      Rational f = A(i, r) / piv;
      Lw(i, r) = f;
      for (int j = r; j < d; ++j)
        if (sgn(A(r, j)) != 0) A(i, j) -= f * A(r, j);
    }
  }
  FullRankFactors out;
  out.rank = r;
  out.L = RatMatrix(d, r);
  out.R = RatMatrix(r, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < r; ++j) out.L(prow[i], j) = Lw(i, j);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < d; ++j) out.R(i, pcol[j]) = A(i, j) / 2;
  return out;
}

}  // namespace fpsdp
