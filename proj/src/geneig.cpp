#include "fpsdp/geneig.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fpsdp {

GeneigResult geneig_bound(const Polynomial& p, const Box& box, int k, const Deadline& dl) {
  if (k < 1) throw std::invalid_argument("geneig_bound: order must be >= 1");
  auto t0 = std::chrono::steady_clock::now();
  const int N = box.dim();
  dl.check();
  mpz_class dim;
  mpz_bin_uiui(dim.get_mpz_t(), N + k, k);
  if (dim > kGeneigMaxSize)
    throw std::length_error("geneig: moment matrix of size " + dim.get_str() + " exceeds " +
                            std::to_string(kGeneigMaxSize));
  Polynomial q = rescale_to_unit(p, box);
  MonomialBasis basis(N, k);
  RatMatrix B = localizing_matrix(q, k, Box::unit(N), dl);
  RatMatrix T = legendre_transform(basis);
  std::vector<Rational> D = legendre_norms(basis);
  RatMatrix Bt = congruence(B, T, dl);
  dl.check();

  // Legendre frame: M_k(z) becomes diag(D); whiten it to the identity.
  const int d = basis.size();
  Vector sq(d);
  for (int i = 0; i < d; ++i) sq(i) = std::sqrt(D[i].get_d());
  Matrix S(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) S(i, j) = to_double_near(Bt(i, j)) / (sq(i) * sq(j));
  S = 0.5 * (S + S.transpose()).eval();
  EigenDecomposition ed = sym_eigen(S);
  dl.check();

  GeneigResult res;
  res.k = k;
  res.size = d;
  res.raw = ed.values(d - 1);
  double norm = std::max(std::fabs(ed.values(0)), std::fabs(ed.values(d - 1)));
  res.tolerance = 1e-8 * norm;

  auto residual_at = [&](double lam) {
    Matrix Rm = -S;
    Rm.diagonal().array() += lam;
    return sym_eigvals(Rm).front();
  };
  double r0 = residual_at(res.raw);
  double c = res.raw;
  if (r0 < 0) c = res.raw + r0;  // lambda_min of the whitened moment matrix is 1
  res.corrected = std::nextafter(c, -HUGE_VAL);
  res.residual = residual_at(res.corrected);

  // Any Rayleigh quotient of (Bt, D) is below the largest generalized eigenvalue.
  std::vector<Rational> w(d);
  for (int i = 0; i < d; ++i) w[i] = Rational(ed.vectors(i, d - 1) / sq(i));
  Rational num = 0, den = 0;
  for (int i = 0; i < d; ++i) {
    if (sgn(w[i]) == 0) continue;
    Rational row = 0;
    for (int j = i + 1; j < d; ++j)
      if (sgn(w[j]) != 0) row += Bt(i, j) * w[j];
    num += w[i] * (Bt(i, i) * w[i] + 2 * row);
    den += w[i] * w[i] * D[i];
    if ((i & 63) == 0) dl.check();
  }
  res.rayleigh = sgn(den) > 0 ? to_double_down(num / den) : -HUGE_VAL;
  res.bound = std::min(res.corrected, res.rayleigh);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace fpsdp
