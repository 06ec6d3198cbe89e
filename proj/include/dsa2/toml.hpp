#pragma once

// Minimal TOML reader covering the subset used by run configs: bare keys,
// [section] headers, strings, numbers, booleans, and (possibly nested)
// arrays that may span lines.  Anything outside that subset is rejected
// with a line:column diagnostic rather than silently misread.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dsa2::toml {

struct Value {
  enum class Kind { string, number, boolean, array };

  Kind kind = Kind::number;
  std::string str;
  double num = 0.0;
  std::int64_t inum = 0;   // valid when is_int
  bool is_int = false;     // token had no '.', 'e', or 'E'
  bool flag = false;
  std::vector<Value> arr;

  int line = 0;  // where the value started, for error messages downstream
  int col = 0;
};

// section "" holds keys that appear before any [section] header.
using Section = std::map<std::string, Value>;
using Document = std::map<std::string, Section>;

// Throws ConfigError with "<source>:line:col: message" on any lexical or
// structural problem, including duplicate keys and duplicate sections.
Document parse(const std::string& text, const std::string& source);

}  // namespace dsa2::toml
