#include "dsa2/trace.hpp"

#include <charconv>
#include <cmath>

#include "dsa2/errors.hpp"

namespace dsa2 {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw NumericError("format_double: conversion failed");
  return std::string(buf, p);
}

double parse_cell(std::string_view cell) {
  if (cell.empty()) return std::nan("");
  double v = 0.0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || p != cell.data() + cell.size())
    throw ConfigError("parse_cell: malformed number '" + std::string(cell) + "'");
  return v;
}

size_t Csv::col(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ConfigError("csv: missing column '" + name + "'");
}

double Csv::num(size_t row, size_t c) const {
  if (row >= rows.size() || c >= rows[row].size()) throw ConfigError("csv: cell out of range");
  return parse_cell(rows[row][c]);
}

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string render_csv(const std::string& schema, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::string out = "# schema=" + schema + "\n";
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out.push_back(',');
    out += header[i];
  }
  out.push_back('\n');
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ConfigError("render_csv: row width differs from header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += row[i];
    }
    out.push_back('\n');
  }
  return out;
}

Csv parse_csv(const std::string& text, const std::string& source) {
  Csv csv;
  size_t pos = 0;
  int lineno = 0;
  auto next_line = [&](std::string& line) {
    if (pos >= text.size()) return false;
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    line.assign(text, pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = nl + 1;
    ++lineno;
    return true;
  };

  std::string line;
  const std::string prefix = "# schema=";
  if (!next_line(line) || line.rfind(prefix, 0) != 0)
    throw ConfigError(source + ": expected '# schema=' on the first line");
  csv.schema = line.substr(prefix.size());
  if (!next_line(line)) throw ConfigError(source + ": missing header line");
  csv.header = split_fields(line);
  while (next_line(line)) {
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != csv.header.size())
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(csv.header.size()) + " fields, got " + std::to_string(fields.size()));
    csv.rows.push_back(std::move(fields));
  }
  return csv;
}

std::vector<long> recorded_rounds(long rounds, long every) {
  if (rounds < 1) throw ConfigError("recorded_rounds: need at least one round");
  if (every < 0) throw ConfigError("recorded_rounds: record_every must be >= 0");
  std::vector<long> out;
  if (every > 0) {
    for (long t = every; t <= rounds; t += every) out.push_back(t);
  } else {
    // Log spacing keeps long runs plottable without megabyte traces.
    const double per_decade = 24.0;
    long prev = 0;
    for (int k = 0;; ++k) {
      long t = std::llround(std::pow(10.0, static_cast<double>(k) / per_decade));
      if (t <= prev) t = prev + 1;
      if (t > rounds) break;
      out.push_back(t);
      prev = t;
    }
  }
  if (out.empty() || out.back() != rounds) out.push_back(rounds);
  return out;
}

}  // namespace dsa2
