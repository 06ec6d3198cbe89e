#include "dsa2/toml.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "dsa2/errors.hpp"

namespace dsa2::toml {
namespace {

struct Cursor {
  const std::string& text;
  const std::string& source;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  char take() {
    char ch = text[pos++];
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return ch;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  [[noreturn]] void fail_at(int l, int c, const std::string& msg) const {
    throw ConfigError(source + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg);
  }
};

bool is_bare_key_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

// Horizontal whitespace and comments, not newlines.
void skip_inline_ws(Cursor& cur) {
  while (!cur.done()) {
    char ch = cur.peek();
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      cur.take();
    } else if (ch == '#') {
      while (!cur.done() && cur.peek() != '\n') cur.take();
    } else {
      return;
    }
  }
}

// Whitespace including newlines; used inside arrays.
void skip_all_ws(Cursor& cur) {
  for (;;) {
    skip_inline_ws(cur);
    if (!cur.done() && cur.peek() == '\n') {
      cur.take();
      continue;
    }
    return;
  }
}

std::string parse_bare_key(Cursor& cur) {
  if (cur.done() || !is_bare_key_char(cur.peek())) cur.fail("expected a key");
  std::string key;
  while (!cur.done() && is_bare_key_char(cur.peek())) key.push_back(cur.take());
  return key;
}

Value parse_string(Cursor& cur) {
  Value v;
  v.kind = Value::Kind::string;
  v.line = cur.line;
  v.col = cur.col;
  cur.take();  // opening quote
  for (;;) {
    if (cur.done() || cur.peek() == '\n') cur.fail("unterminated string");
    char ch = cur.take();
    if (ch == '"') return v;
    if (ch == '\\') {
      if (cur.done()) cur.fail("unterminated escape");
      char esc = cur.take();
      switch (esc) {
        case '"': v.str.push_back('"'); break;
        case '\\': v.str.push_back('\\'); break;
        case 'n': v.str.push_back('\n'); break;
        case 't': v.str.push_back('\t'); break;
        default: cur.fail(std::string("unsupported escape '\\") + esc + "'");
      }
    } else {
      v.str.push_back(ch);
    }
  }
}

Value parse_number(Cursor& cur) {
  Value v;
  v.line = cur.line;
  v.col = cur.col;
  std::string tok;
  bool integral = true;
  while (!cur.done()) {
    char ch = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-') {
      tok.push_back(cur.take());
    } else if (ch == '.' || ch == 'e' || ch == 'E') {
      integral = false;
      tok.push_back(cur.take());
    } else if (ch == '_') {
      cur.take();  // TOML digit separator, dropped
    } else {
      break;
    }
  }
  if (tok.empty()) cur.fail("expected a value");
  v.kind = Value::Kind::number;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (integral) {
    auto [p, ec] = std::from_chars(first, last, v.inum);
    if (ec != std::errc() || p != last) cur.fail_at(v.line, v.col, "malformed integer '" + tok + "'");
    v.is_int = true;
    v.num = static_cast<double>(v.inum);
  } else {
    auto [p, ec] = std::from_chars(first, last, v.num);
    if (ec != std::errc() || p != last) cur.fail_at(v.line, v.col, "malformed number '" + tok + "'");
  }
  return v;
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
  Value v;
  v.kind = Value::Kind::array;
  v.line = cur.line;
  v.col = cur.col;
  cur.take();  // '['
  for (;;) {
    skip_all_ws(cur);
    if (cur.done()) cur.fail("unterminated array");
    if (cur.peek() == ']') {
      cur.take();
      return v;
    }
    v.arr.push_back(parse_value(cur));
    skip_all_ws(cur);
    if (cur.done()) cur.fail("unterminated array");
    char ch = cur.peek();
    if (ch == ',') {
      cur.take();
    } else if (ch != ']') {
      cur.fail("expected ',' or ']' in array");
    }
  }
}

Value parse_value(Cursor& cur) {
  if (cur.done()) cur.fail("expected a value");
  char ch = cur.peek();
  if (ch == '"') return parse_string(cur);
  if (ch == '[') return parse_array(cur);
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    Value v;
    v.line = cur.line;
    v.col = cur.col;
    std::string word;
    while (!cur.done() && std::isalpha(static_cast<unsigned char>(cur.peek()))) word.push_back(cur.take());
    if (word == "true" || word == "false") {
      v.kind = Value::Kind::boolean;
      v.flag = (word == "true");
      return v;
    }
    cur.fail_at(v.line, v.col, "unrecognized value '" + word + "'");
  }
  return parse_number(cur);
}

void expect_line_end(Cursor& cur) {
  skip_inline_ws(cur);
  if (cur.done()) return;
  if (cur.peek() != '\n') cur.fail("unexpected trailing content");
  cur.take();
}

}  // namespace

Document parse(const std::string& text, const std::string& source) {
  Cursor cur{text, source};
  Document doc;
  std::string section;  // current [section], "" before the first header
  doc[section];

  for (;;) {
    skip_inline_ws(cur);
    if (cur.done()) return doc;
    char ch = cur.peek();
    if (ch == '\n') {
      cur.take();
      continue;
    }
    if (ch == '[') {
      int l = cur.line, c = cur.col;
      cur.take();
      section = parse_bare_key(cur);
      if (cur.done() || cur.peek() != ']') cur.fail("expected ']' after section name");
      cur.take();
      if (doc.count(section)) cur.fail_at(l, c, "duplicate section [" + section + "]");
      doc[section];
      expect_line_end(cur);
      continue;
    }
    int l = cur.line, c = cur.col;
    std::string key = parse_bare_key(cur);
    skip_inline_ws(cur);
    if (cur.done() || cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
    cur.take();
    skip_inline_ws(cur);
    Value v = parse_value(cur);
    if (doc[section].count(key)) cur.fail_at(l, c, "duplicate key '" + key + "'");
    doc[section].emplace(std::move(key), std::move(v));
    expect_line_end(cur);
  }
}

}  // namespace dsa2::toml
