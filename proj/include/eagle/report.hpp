// Report emission: json, csv and a plain-text comparison table.
#ifndef EAGLE_REPORT_HPP
#define EAGLE_REPORT_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "harness.hpp"
#include "objectives.hpp"

namespace eagle {

enum class ReportFormat
{
  json,
  csv,
  table,
};

inline ReportFormat parse_format(std::string_view s)
{
  if (s == "json") {
    return ReportFormat::json;
  }
  if (s == "csv") {
    return ReportFormat::csv;
  }
  if (s == "table") {
    return ReportFormat::table;
  }
  throw Error(ErrorKind::unknown_format, "unknown report format '" + std::string(s) + "' (expected json, csv or table)");
}

inline constexpr std::string_view kReportColumns =
  "algorithm,function,dim,sigma,runs,mean_evals_k,std_evals_k,success_rate_pct";

namespace detail {

inline std::string printf_str(const char* fmt, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

inline std::string percent_str(double pct)
{
  return pct == std::floor(pct) ? printf_str("%.0f", pct) : printf_str("%.1f", pct);
}

} // namespace detail

inline nlohmann::ordered_json to_json(const ExperimentReport& r)
{
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["function"] = r.function;
  j["dim"] = r.dim;
  j["sigma"] = r.sigma;
  j["runs"] = r.runs;
  j["mean_evals_k"] = r.mean_evals_k;
  j["std_evals_k"] = r.std_evals_k;
  j["success_rate_pct"] = r.success_rate_pct;
  return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j)
{
  ExperimentReport r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.function = j.at("function").get<std::string>();
  r.dim = j.at("dim").get<std::size_t>();
  r.sigma = j.at("sigma").get<double>();
  r.runs = j.at("runs").get<std::size_t>();
  r.mean_evals_k = j.at("mean_evals_k").get<double>();
  r.std_evals_k = j.at("std_evals_k").get<double>();
  r.success_rate_pct = j.at("success_rate_pct").get<double>();
  return r;
}

/// Inverse of the json emitter.
inline std::vector<ExperimentReport> parse_reports_json(std::string_view text)
{
  const auto doc = nlohmann::json::parse(text);
  std::vector<ExperimentReport> out;
  for (const auto& j : doc.at("reports")) {
    out.push_back(report_from_json(j));
  }
  return out;
}

/// "12.0 ± 1.63 (100)": mean and population std of evaluations in
/// thousands, success rate in percent.
inline std::string table_cell(const ExperimentReport& r)
{
  return detail::printf_str("%.1f", r.mean_evals_k) + " ± " + detail::printf_str("%.2f", r.std_evals_k) + " (" +
         detail::percent_str(r.success_rate_pct) + ")";
}

inline std::string emit_csv(const std::vector<ExperimentReport>& reports)
{
  std::string out(kReportColumns);
  out += '\n';
  for (const auto& r : reports) {
    out += r.algorithm + ',' + r.function + ',' + std::to_string(r.dim) + ',' + detail::printf_str("%.17g", r.sigma) +
           ',' + std::to_string(r.runs) + ',' + detail::printf_str("%.17g", r.mean_evals_k) + ',' +
           detail::printf_str("%.17g", r.std_evals_k) + ',' + detail::printf_str("%.17g", r.success_rate_pct) + '\n';
  }
  return out;
}

inline std::string emit_json(const std::vector<ExperimentReport>& reports)
{
  nlohmann::ordered_json doc;
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    doc["reports"].push_back(to_json(r));
  }
  return doc.dump(2) + "\n";
}

/// One row per (function, dim, sigma), one column per algorithm in order of
/// first appearance.
inline std::string emit_table(const std::vector<ExperimentReport>& reports)
{
  std::vector<std::string> algos;
  std::vector<std::string> rows;
  std::map<std::pair<std::string, std::string>, std::string> cells;
  for (const auto& r : reports) {
    if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end()) {
      algos.push_back(r.algorithm);
    }
    std::string row = r.function + " (d=" + std::to_string(r.dim);
    if (r.sigma > 0.0) {
      row += ", sigma=" + detail::printf_str("%g", r.sigma);
    }
    row += ")";
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) {
      rows.push_back(row);
    }
    cells[{row, r.algorithm}] = table_cell(r);
  }

  std::vector<std::string> header{"Function"};
  for (const auto& a : algos) {
    std::string up = a;
    for (auto& c : up) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    header.push_back(up);
  }
  std::vector<std::vector<std::string>> grid{header};
  for (const auto& row : rows) {
    std::vector<std::string> line{row};
    for (const auto& a : algos) {
      auto it = cells.find({row, a});
      line.push_back(it == cells.end() ? "-" : it->second);
    }
    grid.push_back(std::move(line));
  }

  // "±" is two bytes but one column wide.
  auto width_of = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) {
      w += (c & 0xC0) != 0x80 ? 1 : 0;
    }
    return w;
  };
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      widths[c] = std::max(widths[c], width_of(line[c]));
    }
  }
  std::string out;
  auto put = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out += line[c];
      if (c + 1 < line.size()) {
        out.append(widths[c] - width_of(line[c]) + 2, ' ');
      }
    }
    out += '\n';
  };
  put(grid.front());
  std::size_t total = 0;
  for (auto w : widths) {
    total += w + 2;
  }
  out.append(total - 2, '-');
  out += '\n';
  for (std::size_t i = 1; i < grid.size(); ++i) {
    put(grid[i]);
  }
  return out;
}

inline std::string emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format)
{
  switch (format) {
    case ReportFormat::json: return emit_json(reports);
    case ReportFormat::csv: return emit_csv(reports);
    case ReportFormat::table: return emit_table(reports);
  }
  throw Error(ErrorKind::unknown_format, "unhandled format");
}

inline std::string emit_report(const std::vector<ExperimentReport>& reports, std::string_view format)
{
  return emit_report(reports, parse_format(format));
}

/// Per-stage convergence rows of every trial, for plotting.
inline std::string emit_trace_csv(const std::vector<TrialRecord>& trials)
{
  std::string out = "algorithm,function,seed,trial,stage,evals,best_mean,best_std,accepted,source\n";
  for (const auto& t : trials) {
    for (const auto& e : t.trace) {
      out += std::string(to_string(t.algorithm)) + ',' + t.problem + ',' + std::to_string(t.seed) + ',' +
             std::to_string(t.trial) + ',' + std::to_string(e.stage) + ',' + std::to_string(e.evaluations) + ',' +
             detail::printf_str("%.17g", e.best_mean) + ',' + detail::printf_str("%.17g", e.best_std) + ',' +
             (e.accepted ? "1" : "0") + ',' + to_string(e.source) + '\n';
    }
  }
  return out;
}

/// Machine-readable function registry.
inline std::string emit_registry_json()
{
  nlohmann::ordered_json doc;
  doc["functions"] = nlohmann::ordered_json::array();
  for (const auto& f : function_registry()) {
    const BenchmarkProblem p(f.id, f.default_dim);
    nlohmann::ordered_json j;
    j["name"] = f.name;
    j["formula"] = f.formula;
    j["default_dim"] = f.default_dim;
    j["fixed_dim"] = f.fixed_dim != 0;
    j["min_dim"] = f.min_dim;
    j["lower"] = f.domain.lo;
    j["upper"] = f.domain.hi;
    j["f_star"] = p.f_star();
    j["known_minimizers"] = p.minimizers().size();
    doc["functions"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

} // namespace eagle

#endif // EAGLE_REPORT_HPP
