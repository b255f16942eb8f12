#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fpsdp/fpsdp.hpp"

namespace fpsdp {

struct UnknownBenchmark : std::invalid_argument {
  explicit UnknownBenchmark(const std::string& id) : std::invalid_argument("unknown benchmark: " + id) {}
};

struct Benchmark {
  std::string id;
  std::string name;
  std::string source;       // expression as stored (bracketing included)
  std::string bracketing;   // empty when the appendix form is used as written
  int n = 0;
  int m_expected = 0;       // reference model size
  Box box;
  Expr tree;

  // reference bounds, keyed by (method, k)
  double upper = 0;         // upper-bound column
  double lower = 0;         // sampling lower-bound column
  double nlopt = 0;         // abs-sum maximization column
  std::map<std::pair<Method, int>, double> ref_bounds;
  // reference flop estimates, keyed by (method, k)
  std::map<std::pair<Method, int>, double> ref_flops;
};

const std::vector<Benchmark>& benchmarks();
const Benchmark& benchmark(const std::string& id);

// m produced by the rounding model for this program (cached).
int model_m(const Benchmark& b, const RoundingModel& model = RoundingModel::binary64());

mpz_class flop_estimate(Method method, int n, int m, int k);

// max over samples of |fl(f)(x) - f(x)| with x uniform in the box, rounded to the precision.
double sample_lower_bound(const Expr& tree, const Box& boxX, const RoundingModel& model, long long n_samples,
                          std::uint64_t seed);

// Certified lower bound on max_X eps * sum_j |s_j(x)|, found by multistart pattern search.
// budget = number of random starts (box vertices are always tried when n <= 12).
double abs_sum_lower_bound(const std::vector<Polynomial>& s_list, const Box& boxX, const Rational& eps,
                           long long budget, std::uint64_t seed);

// Relative errors (fl(op) - op) / op of every operation node and input of a
// floating execution at x, computed exactly. Nodes whose exact value is 0 are skipped.
struct NodeError {
  std::string what;
  Rational rel;
};
std::vector<NodeError> node_relative_errors(const Expr& tree, const std::vector<double>& x, int precision);

// Uniform point in the box, rounded to the precision and kept inside the box.
std::vector<double> random_point(const Box& box, int precision, std::mt19937_64& rng);

}  // namespace fpsdp
