#pragma once

// Run traces are stored as flat CSV with a leading "# schema=" line so a
// reader can tell primal and dual layouts apart without sniffing columns.
// Cells hold shortest round-trip decimal doubles; NaN is an empty cell.

#include <string>
#include <string_view>
#include <vector>

namespace dsa2 {

// Shortest decimal string that parses back to exactly v.  NaN -> "".
std::string format_double(double v);

// "" -> NaN, otherwise strict double parse (throws ConfigError).
double parse_cell(std::string_view cell);

struct Csv {
  std::string schema;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name; throws ConfigError when missing.
  size_t col(const std::string& name) const;
  double num(size_t row, size_t col) const;
};

std::string render_csv(const std::string& schema, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

Csv parse_csv(const std::string& text, const std::string& source);

// Rounds to snapshot: every k-th round for every >= 1, or roughly 24 points
// per decade when every == 0.  Ascending, 1-based, always includes `rounds`.
std::vector<long> recorded_rounds(long rounds, long every);

}  // namespace dsa2
