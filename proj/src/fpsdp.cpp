#include "fpsdp/fpsdp.hpp"

#include <chrono>
#include <set>

namespace fpsdp {

std::string method_name(Method m) {
  switch (m) {
    case Method::Geneig: return "geneig";
    case Method::Mvbeta: return "mvbeta";
    case Method::Robsdp: return "robsdp";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "geneig") return Method::Geneig;
  if (s == "mvbeta") return Method::Mvbeta;
  if (s == "robsdp") return Method::Robsdp;
  throw std::invalid_argument("unknown method: " + s);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void collect_vars(const Expr& e, std::set<int>& out) {
  if (!e) return;
  if (e->op == Op::Var) out.insert(e->index);
  collect_vars(e->a, out);
  collect_vars(e->b, out);
}

int count_inexact_consts(const Expr& e, int precision) {
  if (!e) return 0;
  int c = 0;
  if (e->op == Op::Const && !representable(constant_value(*e, precision), precision)) c = 1;
  if (e->op == Op::Div) return c + count_inexact_consts(e->a, precision);
  return c + count_inexact_consts(e->a, precision) + count_inexact_consts(e->b, precision);
}

// l restricted to the error variables with nonzero s_j
struct ActiveLinear {
  Polynomial l;
  Box K;
};

ActiveLinear active_linear(const PreparedProgram& prog) {
  const auto& rp = prog.rp;
  std::vector<int> active;
  for (int j = 0; j < rp.m; ++j)
    if (!rp.s[j].is_zero()) active.push_back(j);
  const int n = rp.n, N = n + static_cast<int>(active.size());
  Polynomial l(N);
  for (std::size_t q = 0; q < active.size(); ++q)
    for (const auto& [a, c] : rp.s[active[q]].terms()) {
      Monomial b(N, 0);
      for (int i = 0; i < n; ++i) b[i] = a[i];
      b[n + q] = 1;
      l.add_term(b, c);
    }
  Rational e = rp.model.eps();
  Box E(std::vector<Rational>(active.size(), -e), std::vector<Rational>(active.size(), e));
  return {l, prog.boxX.product(E)};
}

}  // namespace

PreparedProgram prepare(const Expr& tree, const Box& boxX, const RoundingModel& model, const FpsdpOptions& opts) {
  PreparedProgram prog;
  prog.tree = tree;
  prog.boxX = boxX;
  prog.model = model;
  const int n = boxX.dim();
  auto t0 = Clock::now();
  std::set<int> vars;
  collect_vars(tree, vars);
  int m_est = static_cast<int>(vars.size()) + count_ops(tree).total() + count_inexact_consts(tree, model.precision);
  RoundingOptions ro;
  if (m_est > opts.exact_rounding_max_m) ro.max_e_degree = 2;
  prog.rp = round_expression(tree, n, model, ro, &boxX);
  prog.t_rounding = since(t0);

  t0 = Clock::now();
  prog.h_bar = remainder_bound(prog.rp, boxX);
  IntervalBox X = to_intervals(boxX);
  double sum = 0;
  for (const auto& s : prog.rp.s)
    if (!s.is_zero()) sum = add_up(sum, abs(interval_eval(s, X)).hi);
  prog.lambda_hi = mul_up(sum, model.eps_double());
  prog.t_hbar = since(t0);
  return prog;
}

BoundReport fpsdp(const PreparedProgram& prog, Method method, int k, const FpsdpOptions& opts) {
  auto t0 = Clock::now();
  BoundReport rep;
  rep.method = method;
  rep.k = k;
  rep.n = prog.rp.n;
  rep.m = prog.rp.m;
  rep.h_bar = prog.h_bar;
  rep.t_rounding = prog.t_rounding;
  rep.t_hbar = prog.t_hbar;

  auto note = [&](const std::string& status, const std::string& msg) {
    if (rep.status == "ok") rep.status = status;
    if (!rep.message.empty()) rep.message += "; ";
    rep.message += msg;
  };

  // one side; a failure degrades that side to 0, which stays sound
  auto side = [&](bool upper, double& value, double& residual, double& secs) {
    auto ts = Clock::now();
    Deadline dl = Deadline::after(opts.time_limit);
    try {
      switch (method) {
        case Method::Geneig: {
          ActiveLinear al = active_linear(prog);
          Polynomial p = upper ? al.l : -al.l;
          GeneigResult g = geneig_bound(p, al.K, k, dl);
          value = upper ? g.bound : -g.bound;
          residual = g.residual;
          if (g.residual < -g.tolerance) rep.certified = false;
          break;
        }
        case Method::Mvbeta: {
          ActiveLinear al = active_linear(prog);
          Polynomial p = upper ? al.l : -al.l;
          MvbetaOptions mo;
          mo.budget = opts.budget;
          mo.deadline = dl;
          MvbetaResult r = mvbeta_bound(p, al.K, k, mo);
          value = upper ? r.bound : -r.bound;
          residual = 0;
          break;
        }
        case Method::Robsdp: {
          std::vector<Polynomial> s = prog.rp.s;
          if (!upper)
            for (auto& q : s) q = -q;
          RobustOptions ro;
          ro.deadline = dl;
          ro.exact_factor_max_order = 0;
          RobustLMI lmi = build_robust_lmi(s, prog.boxX, prog.model.eps(), k, ro);
          RobsdpResult r = robsdp_bound(lmi, prog.lambda_hi);
          value = upper ? r.bound : -r.bound;
          residual = r.certificate;
          if (!r.certified) rep.certified = false;
          break;
        }
      }
    } catch (const TimeLimitExceeded&) {
      value = 0;
      note("timeout", std::string(upper ? "upper" : "lower") + " side hit the time limit");
    } catch (const BudgetExceeded& e) {
      value = 0;
      note("budget", e.what());
    } catch (const IterationCap& e) {
      value = 0;
      note("error", e.what());
    } catch (const std::exception& e) {
      value = 0;
      note("error", e.what());
    }
    secs = since(ts);
  };

  side(true, rep.l_upper, rep.residual_upper, rep.t_upper);
  side(false, rep.l_lower, rep.residual_lower, rep.t_lower);
  rep.l_k = std::max(-rep.l_lower, rep.l_upper);
  rep.final_bound = std::max(add_down(rep.l_k, -rep.h_bar), 0.0);
  rep.seconds = since(t0) + prog.t_rounding + prog.t_hbar;
  return rep;
}

BoundReport fpsdp(const Expr& tree, const Box& boxX, const RoundingModel& model, Method method, int k,
                  const FpsdpOptions& opts) {
  return fpsdp(prepare(tree, boxX, model, opts), method, k, opts);
}

}  // namespace fpsdp
