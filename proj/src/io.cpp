#include "quench/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quench {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::header(const std::vector<std::string>& names) {
  row(names);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  write_text_file(path_, buffer_);
  closed_ = true;
}

void write_quench_csv(const QuenchResult& result, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"k", "p_k"});
  for (const auto& me : result.per_mode)
    csv.row({format_double(me.k), format_double(me.probability)});
  csv.close();
}

void write_gradient_csv(const GradientField& grad, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"t", "grad"});
  for (int i = 0; i < grad.n_samples(); ++i)
    csv.row({format_double(grad.time_at(i)), format_double(grad.values[i])});
  csv.close();
}

void write_trace_csv(const OptimizationTrace& trace, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"iter", "s", "r", "defects", "flow_rate"});
  for (const auto& pt : trace.iterates)
    csv.row({std::to_string(pt.iter), format_double(pt.s), format_double(pt.r),
             format_double(pt.defects), format_double(pt.flow_rate)});
  csv.close();
}

void write_qsl_csv(const QslReport& report, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"k", "t_qsl", "t_qsl_over_n"});
  for (size_t i = 0; i < report.momenta.size(); ++i)
    csv.row({format_double(report.momenta[i]),
             format_double(report.qsl_times[i]),
             format_double(report.tau_values[i])});
  csv.close();
}

void write_robustness_csv(const RobustnessResult& result,
                          const std::string& path) {
  CsvWriter csv(path);
  csv.header({"delta", "mean_rho", "ci_halfwidth", "n"});
  for (const auto& s : result.per_delta)
    csv.row({format_double(s.delta), format_double(s.mean_density),
             format_double(s.ci_halfwidth), std::to_string(s.n_realizations)});
  csv.close();
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace quench
