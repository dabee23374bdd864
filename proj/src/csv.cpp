#include "mimdetect/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mimdetect/errors.hpp"

namespace mimd::csv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_cells(const std::string& line,
                                     const std::string& path, std::size_t n) {
  if (line.find('"') != std::string::npos) {
    std::ostringstream msg;
    msg << path << " line " << n << ": quoted cells are not supported";
    throw ValidationError(msg.str());
  }
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::size_t find_column(const Table& table, const std::string& name,
                        const std::string& path) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == name) return i;
  throw ValidationError(path + ": missing required column '" + name + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

constexpr const char* kSweepHeader =
    "sweep_value,source,s0,alpha_bayes,beta_bayes,pe_bayes,alpha_mim,beta_mim,"
    "pe_mim,status";

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");

  Table table;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    if (table.header.empty()) {
      table.header = split_cells(line, path, n);
      continue;
    }
    std::vector<std::string> cells = split_cells(line, path, n);
    if (cells.size() != table.header.size()) {
      std::ostringstream msg;
      msg << path << " line " << n << ": expected " << table.header.size()
          << " cells, found " << cells.size();
      throw ValidationError(msg.str());
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(n);
  }
  if (table.header.empty())
    throw ValidationError(path + ": missing header row");
  return table;
}

double parse_double(const std::string& cell, const std::string& path,
                    std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << path << " line " << line << ": '" << cell << "' in column '"
        << column << "' is not a number";
    throw ValidationError(msg.str());
  }
  return v;
}

Observations read_observations(const std::string& path) {
  const Table table = read_table(path);
  const std::size_t x_col = find_column(table, "x", path);
  std::size_t label_col = table.header.size();
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == "label") label_col = i;

  if (table.rows.empty()) throw ValidationError(path + ": no data rows");

  Observations obs;
  obs.xs.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t line = table.line_numbers[r];
    obs.xs.push_back(parse_double(table.rows[r][x_col], path, line, "x"));
    if (label_col < table.header.size()) {
      const std::string& cell = table.rows[r][label_col];
      if (cell == "A") {
        obs.labels.push_back(EventTag::A);
      } else if (cell == "B") {
        obs.labels.push_back(EventTag::B);
      } else {
        std::ostringstream msg;
        msg << path << " line " << line << ": label '" << cell
            << "' must be A or B";
        throw ValidationError(msg.str());
      }
    }
  }
  return obs;
}

void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows) {
  std::ofstream out = open_out(path);
  out << kSweepHeader << '\n';
  for (const SweepRow& row : rows) {
    out << format_g17(row.sweep_value) << ',' << rate_source_name(row.source)
        << ',' << format_g17(row.s0) << ',' << format_g17(row.bayes.alpha) << ','
        << format_g17(row.bayes.beta) << ',' << format_g17(row.bayes.pe) << ','
        << format_g17(row.mim.alpha) << ',' << format_g17(row.mim.beta) << ','
        << format_g17(row.mim.pe) << ',' << row.status << '\n';
  }
  finish_out(out, path);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  const Table table = read_table(path);
  std::string header;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) header += ',';
    header += table.header[i];
  }
  if (header != kSweepHeader)
    throw ValidationError(path + ": unexpected sweep header '" + header + "'");

  std::vector<SweepRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::vector<std::string>& cells = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    SweepRow row;
    row.sweep_value = parse_double(cells[0], path, line, "sweep_value");
    if (cells[1] == "quadrature") {
      row.source = RateSource::Quadrature;
    } else if (cells[1] == "monte_carlo") {
      row.source = RateSource::MonteCarlo;
    } else {
      std::ostringstream msg;
      msg << path << " line " << line << ": unknown source '" << cells[1] << "'";
      throw ValidationError(msg.str());
    }
    row.s0 = parse_double(cells[2], path, line, "s0");
    row.bayes.alpha = parse_double(cells[3], path, line, "alpha_bayes");
    row.bayes.beta = parse_double(cells[4], path, line, "beta_bayes");
    row.bayes.pe = parse_double(cells[5], path, line, "pe_bayes");
    row.mim.alpha = parse_double(cells[6], path, line, "alpha_mim");
    row.mim.beta = parse_double(cells[7], path, line, "beta_mim");
    row.mim.pe = parse_double(cells[8], path, line, "pe_mim");
    row.status = cells[9];
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_calibration_csv(const std::string& path, double s0, double mean_a,
                           double mean_b, std::uint64_t n, std::uint64_t seed) {
  std::ofstream out = open_out(path);
  out << "s0,mean_a,mean_b,n,seed\n";
  out << format_g17(s0) << ',' << format_g17(mean_a) << ',' << format_g17(mean_b)
      << ',' << n << ',' << seed << '\n';
  finish_out(out, path);
}

void write_lines(const std::string& path, std::span<const std::string> lines) {
  std::ofstream out = open_out(path);
  for (const std::string& line : lines) out << line << '\n';
  finish_out(out, path);
}

}  // namespace mimd::csv
