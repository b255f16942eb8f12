#include "fpsdp/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace fpsdp {

ReportRow row_from(const BoundReport& r) {
  ReportRow row;
  row.method = method_name(r.method);
  row.k = r.k;
  row.n = r.n;
  row.m = r.m;
  row.final_bound = r.final_bound;
  row.l_upper = r.l_upper;
  row.l_lower = r.l_lower;
  row.l_k = r.l_k;
  row.h_bar = r.h_bar;
  row.residual_upper = r.residual_upper;
  row.residual_lower = r.residual_lower;
  row.certified = r.certified;
  row.status = r.status;
  row.message = r.message;
  row.t_rounding = r.t_rounding;
  row.t_hbar = r.t_hbar;
  row.t_upper = r.t_upper;
  row.t_lower = r.t_lower;
  row.seconds = r.seconds;
  return row;
}

std::string format_sci(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

void sort_rows(std::vector<ReportRow>& rows) {
  static const std::vector<std::string> order = {"geneig", "mvbeta", "robsdp", "sample", "abssum"};
  auto rank = [](const std::string& m) {
    auto it = std::find(order.begin(), order.end(), m);
    return static_cast<int>(it - order.begin());
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const ReportRow& a, const ReportRow& b) {
    if (a.bench != b.bench) return a.bench < b.bench;
    if (a.method != b.method) return rank(a.method) < rank(b.method);
    return a.k < b.k;
  });
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_sci(*v) : ""; }

}  // namespace

std::string to_markdown(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "| bench | method | k | n | m | final | reference | upper | h_bar | status | certified | flops | seconds |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    std::string m = std::to_string(r.m);
    if (r.m_expected && r.m_expected != r.m) m += " (expected " + std::to_string(r.m_expected) + ")";
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    os << "| " << r.bench << " | " << r.method << (r.precision == "single" ? " (single, emulated)" : "") << " | "
       << (r.k ? std::to_string(r.k) : "-") << " | " << r.n << " | " << m << " | " << format_sci(r.final_bound)
       << " | " << opt(r.fixture) << " | " << opt(r.upper) << " | " << format_sci(r.h_bar) << " | " << r.status
       << " | " << (r.certified ? "yes" : "no") << " | " << r.flops << " | " << secs << " |\n";
  }
  for (const auto& r : rows)
    if (!r.message.empty()) os << "\n- " << r.bench << " " << r.method << " k=" << r.k << ": " << r.message;
  return os.str();
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "bench,name,method,k,n,m,m_expected,precision,final,l_upper,l_lower,l_k,h_bar,residual_upper,"
        "residual_lower,certified,status,samples,flops,reference,upper,seconds\n";
  auto num = [](double v) { return format_sci(v, 17); };
  for (const auto& r : rows) {
    os << r.bench << "," << r.name << "," << r.method << "," << r.k << "," << r.n << "," << r.m << ","
       << r.m_expected << "," << r.precision << "," << num(r.final_bound) << "," << num(r.l_upper) << ","
       << num(r.l_lower) << "," << num(r.l_k) << "," << num(r.h_bar) << "," << num(r.residual_upper) << ","
       << num(r.residual_lower) << "," << (r.certified ? 1 : 0) << "," << r.status << "," << r.samples << ","
       << r.flops << "," << opt(r.fixture) << "," << opt(r.upper) << "," << r.seconds << "\n";
  }
  return os.str();
}

std::string to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json j;
  j["schema"] = 1;
  j["results"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o = {
        {"bench", r.bench},
        {"name", r.name},
        {"method", r.method},
        {"k", r.k},
        {"n", r.n},
        {"m", r.m},
        {"precision", r.precision},
        {"final", r.final_bound},
        {"l_upper", r.l_upper},
        {"l_lower", r.l_lower},
        {"l_k", r.l_k},
        {"h_bar", r.h_bar},
        {"certificate", {{"residual_upper", r.residual_upper}, {"residual_lower", r.residual_lower},
                         {"certified", r.certified}}},
        {"status", r.status},
        {"flops", r.flops},
        {"timings", {{"rounding", r.t_rounding}, {"h_bar", r.t_hbar}, {"upper", r.t_upper},
                     {"lower", r.t_lower}, {"total", r.seconds}}},
    };
    if (r.precision == "single") o["emulated"] = true;
    if (r.m_expected) {
      o["m_expected"] = r.m_expected;
      o["m_mismatch"] = r.m_expected != r.m;
    }
    if (r.samples) o["samples"] = r.samples;
    if (!r.message.empty()) o["message"] = r.message;
    if (r.fixture) o["reference"] = *r.fixture;
    if (r.upper) o["upper"] = *r.upper;
    j["results"].push_back(o);
  }
  return j.dump(2) + "\n";
}

}  // namespace fpsdp
