#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpsdp/fpsdp.hpp"

namespace fpsdp {

// One cell of a report: a benchmark (or file) analysed by one method at one order.
struct ReportRow {
  std::string bench;      // benchmark id or file path
  std::string name;
  std::string method;     // geneig | mvbeta | robsdp | sample | abssum
  int k = 0;              // 0 for sample / abssum
  int n = 0, m = 0;
  int m_expected = 0;     // 0 when unknown
  std::string precision = "double";
  double final_bound = 0;
  double l_upper = 0, l_lower = 0, l_k = 0, h_bar = 0;
  double residual_upper = 0, residual_lower = 0;
  bool certified = true;
  std::string status = "ok";
  std::string message;
  long long samples = 0;
  std::string flops;      // flop estimate, decimal
  std::optional<double> fixture;  // reference value for this cell
  std::optional<double> upper;    // reference upper bound for this benchmark
  double t_rounding = 0, t_hbar = 0, t_upper = 0, t_lower = 0, seconds = 0;
};

ReportRow row_from(const BoundReport& r);

std::string to_markdown(const std::vector<ReportRow>& rows);
std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_json(const std::vector<ReportRow>& rows);

// Stable order: benchmark, method, k.
void sort_rows(std::vector<ReportRow>& rows);

std::string format_sci(double v, int digits = 3);

}  // namespace fpsdp
