#include "fpsdp/moments.hpp"

#include <functional>

namespace fpsdp {

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product dimension mismatch");
  RatMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rational& v = x(i, k);
      if (sgn(v) == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (sgn(y(k, j)) != 0) r(i, j) += v * y(k, j);
    }
  return r;
}

RatMatrix operator+(const RatMatrix& x, const RatMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum dimension mismatch");
  RatMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

RatMatrix operator-(const RatMatrix& x, const RatMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix difference dimension mismatch");
  RatMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

RatMatrix operator*(const Rational& c, const RatMatrix& x) {
  RatMatrix r = x;
  for (auto& v : r.a) v *= c;
  return r;
}

MonomialBasis::MonomialBasis(int N, int k) : N_(N), k_(k) {
  if (N < 0 || k < 0) throw std::invalid_argument("basis: negative size");
  Monomial cur(N, 0);
  // compositions of d into N parts, first coordinate largest first
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == N - 1) {
      cur[i] = left;
      elems_.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  for (int d = 0; d <= k; ++d) {
    if (N == 0) {
      if (d == 0) elems_.push_back(cur);
      continue;
    }
    rec(0, d);
  }
  for (int i = 0; i < size(); ++i) index_.emplace(elems_[i], i);
}

int MonomialBasis::index_of(const Monomial& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

Deadline Deadline::after(double seconds) {
  Deadline d;
  if (seconds > 0)
    d.at = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
  return d;
}

void Deadline::check() const {
  if (at && std::chrono::steady_clock::now() > *at) throw TimeLimitExceeded();
}

namespace {

// Uniform measure with density 1: moments carry the box volume.
class MomentTable {
public:
  explicit MomentTable(const Box& box) : box_(box), unit_(box.is_unit()), tab_(box.dim()) {}

  const Rational& one_dim(int i, int a) {
    auto& t = tab_[i];
    while (static_cast<int>(t.size()) <= a) {
      int e = static_cast<int>(t.size()) + 1;
      Rational h = 1, l = 1;
      for (int u = 0; u < e; ++u) {
        h *= box_.hi[i];
        l *= box_.lo[i];
      }
      t.push_back((h - l) / e);
    }
    return t[a];
  }

  Rational moment(const Monomial& alpha) {
    if (unit_) {
      mpz_class den = 1;
      unsigned long acc = 1;
      for (int v : alpha) {
        if (v == 0) continue;
        unsigned long f = static_cast<unsigned long>(v) + 1;
        if (acc > (1UL << 40) / f) {
          den *= acc;
          acc = 1;
        }
        acc *= f;
      }
      den *= acc;
      return Rational(mpz_class(1), den);
    }
    Rational z = 1;
    for (int i = 0; i < static_cast<int>(alpha.size()); ++i) z *= one_dim(i, alpha[i]);
    return z;
  }

private:
  const Box& box_;
  bool unit_;
  std::vector<std::vector<Rational>> tab_;
};

}  // namespace

Rational box_moment(const Monomial& alpha, const Box& box) {
  if (static_cast<int>(alpha.size()) != box.dim()) throw std::invalid_argument("box_moment: dimension mismatch");
  MomentTable t(box);
  return t.moment(alpha);
}

Rational linear_functional(const Polynomial& p, const Box& box) {
  if (p.nvars() != box.dim()) throw std::invalid_argument("linear_functional: dimension mismatch");
  MomentTable t(box);
  Rational s = 0;
  for (const auto& [a, c] : p.terms()) s += c * t.moment(a);
  return s;
}

RatMatrix localizing_matrix(const Polynomial& q, int k, const Box& box, const Deadline& dl) {
  const int N = box.dim();
  if (q.nvars() != N) throw std::invalid_argument("localizing_matrix: dimension mismatch");
  if (k < 0) throw std::invalid_argument("localizing_matrix: negative order");
  MonomialBasis basis(N, k), shifts(N, 2 * k);
  MomentTable tab(box);
  std::vector<std::pair<Monomial, Rational>> terms(q.terms().begin(), q.terms().end());
  std::vector<Rational> y(shifts.size());
  Monomial s(N);
  for (int d = 0; d < shifts.size(); ++d) {
    if ((d & 255) == 0) dl.check();
    const Monomial& delta = shifts[d];
    Rational acc = 0;
    for (const auto& [a, c] : terms) {
      for (int i = 0; i < N; ++i) s[i] = a[i] + delta[i];
      acc += c * tab.moment(s);
    }
    y[d] = acc;
  }
  const int n = basis.size();
  RatMatrix M(n, n);
  Monomial sum(N);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int v = 0; v < N; ++v) sum[v] = basis[i][v] + basis[j][v];
      const Rational& val = y[shifts.index_of(sum)];
      M(i, j) = val;
      if (i != j) M(j, i) = val;
    }
  }
  return M;
}

RatMatrix moment_matrix(int N, int k, const Box& box) {
  return localizing_matrix(Polynomial::constant(N, 1), k, box);
}

Rational beta_moment_ratio(const Monomial& eta, const Monomial& beta, const Monomial& alpha) {
  if (eta.size() != beta.size() || eta.size() != alpha.size())
    throw std::invalid_argument("beta_moment_ratio: dimension mismatch");
  mpz_class num = 1, den = 1;
  for (std::size_t i = 0; i < eta.size(); ++i)
    for (int j = 1; j <= alpha[i]; ++j) {
      num *= eta[i] + j;
      den *= eta[i] + beta[i] + j + 1;
    }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

// coefficient of y^j in the shifted Legendre polynomial of degree n
Rational legendre_coeff(int n, int j) {
  mpz_class a, b;
  mpz_bin_uiui(a.get_mpz_t(), n, j);
  mpz_bin_uiui(b.get_mpz_t(), n + j, j);
  mpz_class v = a * b;
  if ((n + j) % 2) v = -v;
  return Rational(v);
}

}  // namespace

RatMatrix legendre_transform(const MonomialBasis& basis) {
  const int d = basis.size(), N = basis.N();
  RatMatrix T(d, d);
  for (int col = 0; col < d; ++col) {
    const Monomial& b = basis[col];
    for (int row = 0; row < d; ++row) {
      const Monomial& a = basis[row];
      bool below = true;
      for (int i = 0; i < N && below; ++i) below = a[i] <= b[i];
      if (!below) continue;
      Rational v = 1;
      for (int i = 0; i < N; ++i) v *= legendre_coeff(b[i], a[i]);
      T(row, col) = v;
    }
  }
  return T;
}

std::vector<Rational> legendre_norms(const MonomialBasis& basis) {
  std::vector<Rational> out;
  out.reserve(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    mpz_class den = 1;
    for (int v : basis[i]) den *= 2 * v + 1;
    out.emplace_back(mpz_class(1), den);
  }
  return out;
}

RatMatrix congruence(const RatMatrix& M, const RatMatrix& T, const Deadline& dl) {
  const int d = M.rows;
  if (M.cols != d || T.rows != d) throw std::invalid_argument("congruence: dimension mismatch");
  const int c = T.cols;
  std::vector<std::vector<std::pair<int, const Rational*>>> colnz(c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < d; ++i)
      if (sgn(T(i, j)) != 0) colnz[j].push_back({i, &T(i, j)});
  RatMatrix W(d, c);  // M T
  for (int j = 0; j < c; ++j) {
    dl.check();
    for (int r = 0; r < d; ++r) {
      Rational acc = 0;
      for (const auto& [i, v] : colnz[j]) acc += M(r, i) * *v;
      W(r, j) = acc;
    }
  }
  RatMatrix R(c, c);
  for (int a = 0; a < c; ++a) {
    dl.check();
    for (int b = a; b < c; ++b) {
      Rational acc = 0;
      for (const auto& [i, v] : colnz[a]) acc += *v * W(i, b);
      R(a, b) = acc;
      if (a != b) R(b, a) = acc;
    }
  }
  return R;
}

}  // namespace fpsdp
