#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "fpsdp/expr.hpp"

namespace fpsdp {

// Dense exact-rational matrix, row-major.
struct RatMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  RatMatrix transpose() const;
};

RatMatrix operator*(const RatMatrix& x, const RatMatrix& y);
RatMatrix operator+(const RatMatrix& x, const RatMatrix& y);
RatMatrix operator-(const RatMatrix& x, const RatMatrix& y);
RatMatrix operator*(const Rational& c, const RatMatrix& x);

// All alpha in N^N_k in graded lexicographic order:
// (0,0) < (1,0) < (0,1) < (2,0) < (1,1) < (0,2).
class MonomialBasis {
public:
  MonomialBasis(int N, int k);
  int N() const { return N_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const Monomial& operator[](int i) const { return elems_[i]; }
  const std::vector<Monomial>& elements() const { return elems_; }
  int index_of(const Monomial& a) const;

private:
  int N_, k_;
  std::vector<Monomial> elems_;
  std::map<Monomial, int> index_;
};

// Deadline shared by the long-running assemblies and hierarchies.
struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;
  static Deadline after(double seconds);
  void check() const;
};

struct TimeLimitExceeded : std::runtime_error {
  TimeLimitExceeded() : std::runtime_error("time limit exceeded") {}
};

Rational box_moment(const Monomial& alpha, const Box& box);
Rational linear_functional(const Polynomial& p, const Box& box);
RatMatrix localizing_matrix(const Polynomial& q, int k, const Box& box, const Deadline& dl = {});
RatMatrix moment_matrix(int N, int k, const Box& box);

Rational beta_moment_ratio(const Monomial& eta, const Monomial& beta, const Monomial& alpha);

// Tensor shifted-Legendre basis on [0,1]^N, truncated to total degree k.
// Column b of T holds the monomial coefficients of P_b = prod_i P_{b_i}(y_i).
// T^T M_k(z) T is diagonal on the unit box.
RatMatrix legendre_transform(const MonomialBasis& basis);
std::vector<Rational> legendre_norms(const MonomialBasis& basis);  // int_[0,1]^N P_b^2
// T^T M T, using the sparsity of T.
RatMatrix congruence(const RatMatrix& M, const RatMatrix& T, const Deadline& dl = {});

}  // namespace fpsdp
