#include "fpsdp/robsdp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace fpsdp {

RobustLMI build_robust_lmi(const std::vector<Polynomial>& s_list, const Box& boxX, const Rational& eps, int k,
                           const RobustOptions& opts) {
  if (k < 1) throw std::invalid_argument("build_robust_lmi: order must be >= 1");
  const int n = boxX.dim();
  RobustLMI lmi;
  lmi.n = n;
  lmi.k = k;
  lmi.eps = eps;
  MonomialBasis basis(n, k);
  const int d = basis.size();
  lmi.d = d;
  const Box unit = Box::unit(n);
  lmi.M = moment_matrix(n, k, unit);
  RatMatrix T = legendre_transform(basis);
  std::vector<Rational> D = legendre_norms(basis);
  Vector sq(d);
  for (int i = 0; i < d; ++i) sq(i) = std::sqrt(D[i].get_d());
  lmi.Mw = Matrix::Identity(d, d);

  std::vector<Matrix> Ls, Rs;
  int total = 0;
  for (const Polynomial& s : s_list) {
    if (s.nvars() != n) throw std::invalid_argument("build_robust_lmi: s_j arity mismatch");
    if (s.is_zero()) continue;
    opts.deadline.check();
    RatMatrix Mj = eps * localizing_matrix(rescale_to_unit(s, boxX), k, unit, opts.deadline);
    int r;
    if (k <= opts.exact_factor_max_order) {
      FullRankFactors f = full_rank_factorization(Mj);
      r = f.rank;
      lmi.exact.push_back(std::move(f));
    } else {
      r = exact_rank(Mj);
    }
    if (r == 0) continue;
    RatMatrix Mt = congruence(Mj, T, opts.deadline);
    Matrix A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A(i, j) = to_double_near(Mt(i, j)) / (sq(i) * sq(j));
    A = 0.5 * (A + A.transpose()).eval();
    EigenDecomposition ed = sym_eigen(A);
    // keep the r eigenpairs of largest magnitude
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::fabs(ed.values(a)) > std::fabs(ed.values(b)); });
    Matrix Lj(d, r), Rj(r, d);
    for (int c = 0; c < r; ++c) {
      double lam = ed.values(order[c]);
      double root = std::sqrt(std::fabs(lam) / 2);
      Lj.col(c) = ed.vectors.col(order[c]) * root;
      Rj.row(c) = ed.vectors.col(order[c]).transpose() * (lam < 0 ? -root : root);
    }
    lmi.Mj.push_back(std::move(Mj));
    lmi.A.push_back(std::move(A));
    lmi.ranks.push_back(r);
    Ls.push_back(std::move(Lj));
    Rs.push_back(std::move(Rj));
    total += r;
  }
  lmi.L = Matrix::Zero(d, total);
  lmi.R = Matrix::Zero(total, d);
  int off = 0;
  for (std::size_t j = 0; j < Ls.size(); ++j) {
    const int r = static_cast<int>(Ls[j].cols());
    lmi.L.block(0, off, d, r) = Ls[j];
    lmi.R.block(off, 0, r, d) = Rs[j];
    off += r;
  }
  return lmi;
}

Matrix lmi_matrix(const RobustLMI& lmi, double lambda, double tau) {
  const int d = lmi.d, r = static_cast<int>(lmi.L.cols());
  Matrix X = Matrix::Zero(d + r, d + r);
  X.topLeftCorner(d, d) = lambda * lmi.Mw - tau * lmi.L * lmi.L.transpose();
  X.bottomLeftCorner(r, d) = lmi.R;
  X.topRightCorner(d, r) = lmi.R.transpose();
  X.bottomRightCorner(r, r) = tau * Matrix::Identity(r, r);
  return X;
}

namespace {

constexpr int kDirectCertificateMax = 600;

double lambda_max(const Matrix& X) { return sym_eigvals(X).back(); }

}  // namespace

RobsdpResult robsdp_bound(const RobustLMI& lmi, double lambda_hi) {
  auto t0 = std::chrono::steady_clock::now();
  RobsdpResult res;
  res.k = lmi.k;
  res.block_dim = lmi.block_dim();
  const int d = lmi.d;
  if (lmi.L.cols() == 0) {
    res.bound = 0;
    res.tau = 1;
    res.certificate = sym_eigvals(Matrix::Zero(d, d)).front();
    res.certified = true;
    return res;
  }
  // normalize so that lambda is O(1)
  double S = lambda_hi;
  if (!(S > 0)) {
    S = 0;
    for (const auto& A : lmi.A) S += sym_eigvals(A.cwiseAbs()).back();
  }
  const double sS = std::sqrt(S);
  Matrix Ln = lmi.L / sS, Rn = lmi.R / sS;
  Matrix P = Ln * Ln.transpose(), Q = Rn.transpose() * Rn;
  // Schur complement over tau I: min lambda at fixed tau is lambda_max(tau P + Q / tau)
  auto G = [&](double logt) {
    ++res.evaluations;
    double t = std::exp(logt);
    return lambda_max(t * P + Q / t);
  };

  double tau_max = 1 + Rn.squaredNorm();
  double hi = std::log(tau_max), lo = hi - 60 * std::log(2.0);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double best_t = 0, best_g = 0;
  for (int expand = 0;; ++expand) {
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double g1 = G(x1), g2 = G(x2);
    while (b - a > 1e-8) {
      if (g1 <= g2) {
        b = x2;
        x2 = x1;
        g2 = g1;
        x1 = b - phi * (b - a);
        g1 = G(x1);
      } else {
        a = x1;
        x1 = x2;
        g1 = g2;
        x2 = a + phi * (b - a);
        g2 = G(x2);
      }
    }
    best_t = 0.5 * (a + b);
    best_g = G(best_t);
    const double span = hi - lo;
    bool at_top = best_t > hi - 1e-6 * span;
    bool at_bottom = best_t < lo + 1e-6 * span;
    if (!at_top && !at_bottom) break;
    if (expand >= 60) throw IterationCap(0.0);
    if (at_top) hi += std::log(2.0) * 8;
    if (at_bottom) lo -= std::log(2.0) * 8;
  }

  double tau = std::exp(best_t);
  double lam = best_g;
  auto certificate = [&](double l) {
    if (lmi.block_dim() <= kDirectCertificateMax) {
      RobustLMI scaled;
      scaled.d = d;
      scaled.Mw = lmi.Mw;
      scaled.L = Ln;
      scaled.R = Rn;
      return sym_eigvals(lmi_matrix(scaled, l, tau)).front();
    }
    Matrix X = l * lmi.Mw - tau * P - Q / tau;
    return sym_eigvals(X).front();
  };
  double cert = certificate(lam);
  if (cert < 0) lam += cert;  // lambda_min of the whitened moment matrix is 1
  lam = std::nextafter(lam, -HUGE_VAL);
  res.certificate = certificate(lam);
  res.certified = res.certificate >= -1e-8;
  res.lambda = lam * S;
  res.tau = tau;
  res.bound = std::max(res.lambda, 0.0);

  // sign-vector ascent for a vertex witness
  {
    Matrix X = tau * P + Q / tau;
    EigenDecomposition ed = sym_eigen(X);
    Vector v = ed.vectors.col(d - 1);
    double best = 0;
    std::vector<int> sigma(lmi.A.size(), 0);
    for (int it = 0; it < 20; ++it) {
      bool changed = false;
      Matrix sum = Matrix::Zero(d, d);
      for (std::size_t j = 0; j < lmi.A.size(); ++j) {
        int sg = v.dot(lmi.A[j] * v) >= 0 ? 1 : -1;
        if (sg != sigma[j]) changed = true;
        sigma[j] = sg;
        sum += sg * lmi.A[j];
      }
      EigenDecomposition es = sym_eigen(sum);
      best = std::max(best, es.values(d - 1));
      v = es.vectors.col(d - 1);
      if (!changed) break;
    }
    res.witness = best;
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace fpsdp
