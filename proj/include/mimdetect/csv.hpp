#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimdetect/distributions.hpp"
#include "mimdetect/experiments.hpp"

namespace mimd::csv {

// %.17g: every double round-trips bit-exactly through this formatting.
std::string format_g17(double v);
// %.(digits)g: human-readable summaries.
std::string format_sig(double v, int digits);

// A parsed CSV file: comma-separated cells, mandatory header row, '#'-prefixed
// and blank lines skipped. Quoting is not supported (all files written here
// are plain numeric tables). Every row keeps its 1-based source line number
// for diagnostics.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table read_table(const std::string& path);

// Strict double parse of one cell; context strings feed the diagnostic.
double parse_double(const std::string& cell, const std::string& path,
                    std::size_t line, const std::string& column);

// Observation input: column `x` required, column `label` (values `A`/`B`)
// optional; other columns are ignored. labels is empty or matches xs in size.
struct Observations {
  std::vector<double> xs;
  std::vector<EventTag> labels;
};

Observations read_observations(const std::string& path);

// Sweep result table, columns:
//   sweep_value,source,s0,alpha_bayes,beta_bayes,pe_bayes,
//   alpha_mim,beta_mim,pe_mim,status
// Numeric cells are %.17g so a read-back reproduces the doubles bit-exactly.
// Confusion counts are not serialized; read_sweep_csv leaves them zero.
void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(const std::string& path);

// One-row calibration record: s0,mean_a,mean_b,n,seed.
void write_calibration_csv(const std::string& path, double s0, double mean_a,
                           double mean_b, std::uint64_t n, std::uint64_t seed);

// Writes arbitrary pre-assembled lines (used by the detect command, whose
// trailing summary block is '#'-prefixed). Lines must not contain newlines.
void write_lines(const std::string& path, std::span<const std::string> lines);

}  // namespace mimd::csv
