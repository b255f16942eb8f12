#include "fpsdp/mvbeta.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace fpsdp {

mpz_class mvbeta_pair_count(int N, int k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * N + 2 * k, 2 * k);
  return c;
}

Rational mvbeta_value(const Polynomial& p, const Monomial& eta, const Monomial& beta) {
  Rational s = 0;
  for (const auto& [a, c] : p.terms()) s += c * beta_moment_ratio(eta, beta, a);
  return s;
}

namespace {

struct Step {
  int var, eta, beta;
};

class Enumerator {
public:
  Enumerator(const Polynomial& p, int k, const MvbetaOptions& opts) : N_(p.nvars()), K_(2 * k), opts_(opts) {
    for (const auto& [a, c] : p.terms()) {
      double den = 1;
      for (int v : a) den *= v + 1;
      dd_.push_back(c.get_d() / den);
      absc_.push_back(std::fabs(c.get_d()));
    }
    const int T = static_cast<int>(dd_.size());
    touched_.resize(N_);
    int t = 0;
    for (const auto& [a, c] : p.terms()) {
      for (int j = 0; j < N_; ++j)
        if (a[j] > 0) {
          touched_[j].push_back({t, a[j]});
          maxdeg_ = std::max(maxdeg_, a[j]);
        }
      ++t;
    }
    // rho(eta, beta, a) = (a+1) prod_{u=1..a} (eta+u)/(eta+beta+u+1)
    rho_.assign(static_cast<std::size_t>(K_ + 1) * (K_ + 1) * (maxdeg_ + 1), 0.0);
    for (int e = 0; e <= K_; ++e)
      for (int b = 0; e + b <= K_; ++b)
        for (int a = 0; a <= maxdeg_; ++a) {
          double r = a + 1;
          for (int u = 1; u <= a; ++u) r *= static_cast<double>(e + u) / (e + b + u + 1);
          rho_[idx(e, b, a)] = r;
        }
    pi_.assign(T, 1.0);
    total_ = 0;
    double c1 = 0, cmax = 0;
    for (int i = 0; i < T; ++i) {
      total_ += dd_[i];
      c1 += absc_[i];
      cmax = std::max(cmax, absc_[i]);
    }
    const double u = std::ldexp(1.0, -53);
    err_ = 2 * u * (c1 * (7.0 * K_ * T + K_ * (2.0 * maxdeg_ + 3) + 10 + T) + 6 * K_ * T * cmax);
  }

  void run() {
    rec(0, K_);
    prune();
  }

  std::vector<std::vector<Step>> survivors;
  double best_upper = std::numeric_limits<double>::infinity();
  long long visited = 0;

private:
  std::size_t idx(int e, int b, int a) const {
    return (static_cast<std::size_t>(e) * (K_ + 1) + b) * (maxdeg_ + 1) + a;
  }

  void visit() {
    ++visited;
    if ((visited & 0xffff) == 0) opts_.deadline.check();
    double v = total_;
    if (v + err_ < best_upper) best_upper = v + err_;
    if (v - err_ <= best_upper) {
      survivors.push_back(path_);
      if (survivors.size() > 200000) prune();
    }
  }

  void prune() {
    std::vector<std::vector<Step>> keep;
    for (auto& s : survivors)
      if (value_of(s) - err_ <= best_upper) keep.push_back(std::move(s));
    survivors.swap(keep);
  }

  double value_of(const std::vector<Step>& s) const {
    std::vector<double> pi(dd_.size(), 1.0);
    for (const auto& st : s)
      for (const auto& [t, a] : touched_[st.var]) pi[t] *= rho_[idx(st.eta, st.beta, a)];
    double v = 0;
    for (std::size_t t = 0; t < dd_.size(); ++t) v += dd_[t] * pi[t];
    return v;
  }

  void rec(int start, int left) {
    visit();
    if (left == 0) return;
    std::vector<double> saved;
    for (int j = start; j < N_; ++j) {
      const auto& tj = touched_[j];
      // a variable absent from p leaves every quotient unchanged
      if (tj.empty()) continue;
      for (int s = 1; s <= left; ++s)
        for (int e = s; e >= 0; --e) {
          const int b = s - e;
          double tot0 = total_;
          saved.resize(tj.size());
          for (std::size_t q = 0; q < tj.size(); ++q) {
            const auto [t, a] = tj[q];
            saved[q] = pi_[t];
            double np = pi_[t] * rho_[idx(e, b, a)];
            total_ += dd_[t] * (np - pi_[t]);
            pi_[t] = np;
          }
          path_.push_back({j, e, b});
          rec(j + 1, left - s);
          path_.pop_back();
          for (std::size_t q = 0; q < tj.size(); ++q) pi_[tj[q].first] = saved[q];
          total_ = tot0;
        }
    }
  }

  int N_, K_;
  const MvbetaOptions& opts_;
  std::vector<double> dd_, absc_;
  std::vector<std::vector<std::pair<int, int>>> touched_;
  int maxdeg_ = 0;
  std::vector<double> rho_;
  std::vector<double> pi_;
  double total_ = 0;
  double err_ = 0;
  std::vector<Step> path_;
};

}  // namespace

MvbetaResult mvbeta_bound(const Polynomial& p, const Box& box, int k, const MvbetaOptions& opts) {
  if (k < 1) throw std::invalid_argument("mvbeta_bound: order must be >= 1");
  auto t0 = std::chrono::steady_clock::now();
  const int N = box.dim();
  mpz_class count = mvbeta_pair_count(N, k);
  if (count > mpz_class(opts.budget)) throw BudgetExceeded(count);
  Polynomial q = rescale_to_unit(p, box);
  // lower bound on max p: the maximal quotient sum, found as the minimum for -p
  Polynomial nq = -q;

  Enumerator en(nq, k, opts);
  en.run();

  MvbetaResult res;
  res.k = k;
  res.candidates = en.visited;
  bool first = true;
  for (const auto& path : en.survivors) {
    Monomial eta(N, 0), beta(N, 0);
    for (const auto& st : path) {
      eta[st.var] = st.eta;
      beta[st.var] = st.beta;
    }
    Rational v = mvbeta_value(q, eta, beta);
    ++res.exact_evaluations;
    if (first || v > res.exact) {
      res.exact = v;
      res.eta = eta;
      res.beta = beta;
      first = false;
    }
    if ((res.exact_evaluations & 1023) == 0) opts.deadline.check();
  }
  res.bound = to_double_down(res.exact);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace fpsdp
