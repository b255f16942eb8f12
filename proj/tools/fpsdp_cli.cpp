#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fpsdp/bench.hpp"
#include "fpsdp/report.hpp"

using namespace fpsdp;

namespace {

struct Target {
  std::string id, name;
  Program prog;
  const Benchmark* bench = nullptr;
  PreparedProgram prepared;
};

std::vector<int> parse_orders(const std::string& s) {
  std::vector<int> ks;
  auto dash = s.find('-');
  if (dash == std::string::npos) {
    ks.push_back(std::stoi(s));
  } else {
    int a = std::stoi(s.substr(0, dash)), b = std::stoi(s.substr(dash + 1));
    for (int k = a; k <= b; ++k) ks.push_back(k);
  }
  for (int k : ks)
    if (k < 1) throw std::invalid_argument("order must be >= 1");
  return ks;
}

int thread_count() {
  int t = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FPSDP_THREADS")) t = std::atoi(env);
  return std::max(t, 1);
}

void run_pool(std::vector<std::function<void()>>& jobs, int threads) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) jobs[i]();
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(threads, static_cast<int>(jobs.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds on roundoff errors of polynomial programs"};
  std::string bench_id, file, method = "robsdp", order = "1", prec = "double", format = "md", out;
  long long samples = 1000000;
  std::uint64_t seed = 1;
  double budget = 5e7, time_limit = 0;
  app.add_option("--bench", bench_id, "benchmark id (a..i) or all");
  app.add_option("--file", file, "program file");
  app.add_option("--method", method, "geneig|mvbeta|robsdp|sample|abssum|all")
      ->check(CLI::IsMember({"geneig", "mvbeta", "robsdp", "sample", "abssum", "all"}));
  app.add_option("--order", order, "relaxation order k, or a range k1-k2");
  app.add_option("--prec", prec, "double|single")->check(CLI::IsMember({"double", "single"}));
  app.add_option("--samples", samples, "samples for the sampling lower bound");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--format", format, "md|csv|json")->check(CLI::IsMember({"md", "csv", "json"}));
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--budget", budget, "mvbeta pair budget");
  app.add_option("--time-limit", time_limit, "seconds per one-sided bound (0 = none)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::vector<Target> targets;
  std::vector<int> orders;
  try {
    orders = parse_orders(order);
    if (bench_id.empty() == file.empty()) throw std::invalid_argument("give exactly one of --bench or --file");
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw std::invalid_argument("cannot read " + file);
      std::stringstream ss;
      ss << in.rdbuf();
      Target t;
      t.id = file;
      t.prog = parse_program(ss.str());
      if (prec == "single") t.prog.precision = 24;
      targets.push_back(std::move(t));
    } else {
      std::vector<const Benchmark*> list;
      if (bench_id == "all")
        for (const auto& b : benchmarks()) list.push_back(&b);
      else
        list.push_back(&benchmark(bench_id));
      for (const auto* b : list) {
        Target t;
        t.id = b->id;
        t.name = b->name;
        t.bench = b;
        t.prog.n = b->n;
        t.prog.box = b->box;
        t.prog.tree = b->tree;
        t.prog.precision = prec == "single" ? 24 : 53;
        targets.push_back(std::move(t));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::vector<std::string> methods;
  if (method == "all")
    methods = {"geneig", "mvbeta", "robsdp", "sample", "abssum"};
  else
    methods = {method};

  FpsdpOptions opts;
  opts.budget = budget;
  opts.time_limit = time_limit;
  const int threads = thread_count();

  std::vector<std::function<void()>> prep;
  for (auto& t : targets)
    prep.push_back([&t, &opts] {
      RoundingModel model{t.prog.precision};
      t.prepared = prepare(t.prog.tree, t.prog.box, model, opts);
    });
  try {
    run_pool(prep, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::vector<ReportRow> rows;
  std::mutex mu;
  std::vector<std::function<void()>> jobs;
  for (auto& t : targets) {
    auto base = [&t, prec](ReportRow& r) {
      r.bench = t.id;
      r.name = t.name;
      r.precision = prec;
      r.n = t.prepared.rp.n;
      r.m = t.prepared.rp.m;
      if (t.bench) {
        r.m_expected = t.bench->m_expected;
        r.upper = t.bench->upper;
      }
    };
    for (const auto& meth : methods) {
      if (meth == "sample" || meth == "abssum") {
        jobs.push_back([&, meth, base] {
          ReportRow r;
          base(r);
          r.method = meth;
          auto t0 = std::chrono::steady_clock::now();
          if (meth == "sample") {
            r.samples = samples;
            r.final_bound = sample_lower_bound(t.prog.tree, t.prog.box, t.prepared.model, samples, seed);
            if (t.bench) r.fixture = t.bench->lower;
          } else {
            r.final_bound = abs_sum_lower_bound(t.prepared.rp.s, t.prog.box, t.prepared.model.eps(), 64, seed);
            if (t.bench) r.fixture = t.bench->nlopt;
          }
          r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          std::lock_guard<std::mutex> lock(mu);
          rows.push_back(r);
        });
        continue;
      }
      Method mm = parse_method(meth);
      for (int k : orders)
        jobs.push_back([&, mm, k, base] {
          ReportRow r = row_from(fpsdp::fpsdp(t.prepared, mm, k, opts));
          base(r);
          r.flops = flop_estimate(mm, r.n, r.m, k).get_str();
          if (t.bench) {
            auto it = t.bench->ref_bounds.find({mm, k});
            if (it != t.bench->ref_bounds.end()) r.fixture = it->second;
          }
          std::lock_guard<std::mutex> lock(mu);
          rows.push_back(r);
        });
    }
  }
  run_pool(jobs, threads);
  sort_rows(rows);

  std::string text = format == "json" ? to_json(rows) : format == "csv" ? to_csv(rows) : to_markdown(rows) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(out);
    if (!o) {
      std::cerr << "error: cannot write " << out << "\n";
      return 1;
    }
    o << text;
  }
  for (const auto& r : rows)
    if (!r.certified) return 2;
  return 0;
}
