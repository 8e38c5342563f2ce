#pragma once

#include <string>
#include <vector>

#include "quench/evolve.hpp"
#include "quench/gradient.hpp"
#include "quench/optimize.hpp"
#include "quench/qsl.hpp"
#include "quench/robustness.hpp"

namespace quench {

/// Shortest exact decimal representation (%.17g); all CSV output goes
/// through this so files are bit-reproducible.
std::string format_double(double v);

/// Minimal CSV writer: one header row, then rows of formatted cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);
  void close();  // flushes; throws on I/O failure
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
  bool closed_ = false;
};

void write_quench_csv(const QuenchResult& result, const std::string& path);
void write_gradient_csv(const GradientField& grad, const std::string& path);
void write_trace_csv(const OptimizationTrace& trace, const std::string& path);
void write_qsl_csv(const QslReport& report, const std::string& path);
void write_robustness_csv(const RobustnessResult& result,
                          const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace quench
