#ifndef OGMLAB_TRACE_HPP
#define OGMLAB_TRACE_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogmlab/certificates.hpp"

namespace ogm {

namespace detail {

/// 17 significant digits round-trips every finite double exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& cell, long line_no) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

struct TraceMeta {
  std::string method;
  std::string problem;
  double l = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  double ref_residual = 0.0;
  double f_star = 0.0;
};

struct TraceRecord {
  long k = 0;
  double f_x = 0.0;
  double f_y = 0.0;
  double f_xtilde = std::numeric_limits<double>::quiet_NaN();
  double grad_dual_norm = 0.0;
  double bound_primary = std::numeric_limits<double>::quiet_NaN();
  double bound_secondary = std::numeric_limits<double>::quiet_NaN();
  double lyap = std::numeric_limits<double>::quiet_NaN();
  double lyap_tilde = std::numeric_limits<double>::quiet_NaN();
  bool slack_primary_ok = true;
  bool slack_secondary_ok = true;
};

struct Trace {
  TraceMeta meta;
  std::vector<TraceRecord> rows;
};

inline constexpr const char* kTraceColumns =
    "k,f_x,f_y,f_xtilde,grad_dual_norm,bound_primary,bound_secondary,lyap,lyap_tilde,"
    "slack_primary_ok,slack_secondary_ok";

/// schema=1 line, metadata line, column header, then one row per iterate.
/// LF endings, '.' decimal, 17 significant digits.
inline std::string trace_to_csv(const Trace& trace) {
  using detail::fmt17;
  std::string out;
  out += "schema=1\n";
  out += "method=" + trace.meta.method + ",problem=" + trace.meta.problem +
         ",L=" + fmt17(trace.meta.l) + ",mu=" + fmt17(trace.meta.mu) +
         ",seed=" + std::to_string(trace.meta.seed) +
         ",ref_residual=" + fmt17(trace.meta.ref_residual) +
         ",f_star=" + fmt17(trace.meta.f_star) + "\n";
  out += kTraceColumns;
  out += '\n';
  for (const TraceRecord& r : trace.rows) {
    out += std::to_string(r.k);
    out += ',';
    out += fmt17(r.f_x);
    out += ',';
    out += fmt17(r.f_y);
    out += ',';
    out += fmt17(r.f_xtilde);
    out += ',';
    out += fmt17(r.grad_dual_norm);
    out += ',';
    out += fmt17(r.bound_primary);
    out += ',';
    out += fmt17(r.bound_secondary);
    out += ',';
    out += fmt17(r.lyap);
    out += ',';
    out += fmt17(r.lyap_tilde);
    out += ',';
    out += r.slack_primary_ok ? '1' : '0';
    out += ',';
    out += r.slack_secondary_ok ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline Trace parse_trace_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw ParseError("trace: unexpected end of input");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line();
  if (line != "schema=1") throw ParseError("trace: expected 'schema=1', got '" + line + "'");

  next_line();
  Trace trace;
  for (const std::string& field : detail::split_csv(line)) {
    const auto eq = field.find('=');
    if (eq == std::string::npos)
      throw ParseError("trace metadata: field '" + field + "' lacks '='");
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "method") trace.meta.method = val;
    else if (key == "problem") trace.meta.problem = val;
    else if (key == "L") trace.meta.l = detail::parse_double(val, line_no);
    else if (key == "mu") trace.meta.mu = detail::parse_double(val, line_no);
    else if (key == "seed") trace.meta.seed = std::stoull(val);
    else if (key == "ref_residual") trace.meta.ref_residual = detail::parse_double(val, line_no);
    else if (key == "f_star") trace.meta.f_star = detail::parse_double(val, line_no);
    else throw ParseError("trace metadata: unknown field '" + key + "'");
  }

  next_line();
  if (line != kTraceColumns) throw ParseError("trace: unexpected column header");

  long expect_k = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 11)
      throw ParseError("line " + std::to_string(line_no) + ": expected 11 columns");
    TraceRecord r;
    r.k = std::stol(cells[0]);
    if (r.k != expect_k)
      throw ParseError("line " + std::to_string(line_no) + ": k must increase from 0");
    ++expect_k;
    r.f_x = detail::parse_double(cells[1], line_no);
    r.f_y = detail::parse_double(cells[2], line_no);
    r.f_xtilde = detail::parse_double(cells[3], line_no);
    r.grad_dual_norm = detail::parse_double(cells[4], line_no);
    r.bound_primary = detail::parse_double(cells[5], line_no);
    r.bound_secondary = detail::parse_double(cells[6], line_no);
    r.lyap = detail::parse_double(cells[7], line_no);
    r.lyap_tilde = detail::parse_double(cells[8], line_no);
    r.slack_primary_ok = cells[9] == "1";
    r.slack_secondary_ok = cells[10] == "1";
    trace.rows.push_back(r);
  }
  return trace;
}

inline Trace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_trace_csv(in);
}

inline Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace '" + path + "'");
  return parse_trace_csv(in);
}

/// Certificate rows with the same schema header.
inline std::string certificate_to_csv(const CertificateReport& rep) {
  using detail::fmt17;
  std::string out;
  out += "schema=1\n";
  out += "certificate=" + rep.name + ",eps_ref=" + fmt17(rep.eps_ref) + "\n";
  out += "k,lyap,dlyap,bound,gap,slack,violated\n";
  for (const CertRow& r : rep.rows) {
    out += std::to_string(r.k);
    out += ',';
    out += fmt17(r.lyap);
    out += ',';
    out += fmt17(r.dlyap);
    out += ',';
    out += fmt17(r.bound);
    out += ',';
    out += fmt17(r.gap);
    out += ',';
    out += fmt17(r.slack);
    out += ',';
    out += r.violated ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ogm

#endif  // OGMLAB_TRACE_HPP
