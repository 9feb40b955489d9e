#include "toml.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "warpest/errors.hpp"

namespace warpest::cli {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::config_invalid,
              "config line " + std::to_string(line) + ": " + what);
}

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }

  // Skips spaces, tabs and comments; newlines only when multiline is set.
  void skip_ws(bool multiline) {
    while (!done()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        take();
      } else if (c == '#') {
        while (!done() && peek() != '\n') take();
      } else if (c == '\n' && multiline) {
        take();
      } else {
        break;
      }
    }
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& cur) {
  cur.skip_ws(false);
  if (cur.done()) fail(cur.line, "expected a key");
  if (cur.peek() == '"') {
    cur.take();
    std::string out;
    while (!cur.done() && cur.peek() != '"') out.push_back(cur.take());
    if (cur.done()) fail(cur.line, "unterminated quoted key");
    cur.take();
    return out;
  }
  std::string out;
  while (!cur.done() && is_bare_key_char(cur.peek())) out.push_back(cur.take());
  if (out.empty()) fail(cur.line, "expected a key");
  return out;
}

TomlValue parse_value(Cursor& cur);

TomlValue parse_scalar(Cursor& cur) {
  const int line = cur.line;
  if (cur.peek() == '"') {
    cur.take();
    std::string out;
    while (!cur.done() && cur.peek() != '"') {
      char c = cur.take();
      if (c == '\\' && !cur.done()) {
        char esc = cur.take();
        switch (esc) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: fail(line, std::string("unsupported escape \\") + esc);
        }
      } else {
        out.push_back(c);
      }
    }
    if (cur.done()) fail(line, "unterminated string");
    cur.take();
    return TomlValue(std::move(out));
  }

  std::string token;
  while (!cur.done()) {
    char c = cur.peek();
    if (c == ',' || c == ']' || c == '}' || c == '\n' || c == '#' || c == ' ' || c == '\t' ||
        c == '\r') {
      break;
    }
    token.push_back(cur.take());
  }
  if (token.empty()) fail(line, "expected a value");
  if (token == "true") return TomlValue(true);
  if (token == "false") return TomlValue(false);
  if (token == "inf" || token == "+inf") return TomlValue(HUGE_VAL);
  if (token == "-inf") return TomlValue(-HUGE_VAL);

  const bool looks_float = token.find_first_of(".eE") != std::string::npos;
  errno = 0;
  char* end = nullptr;
  if (!looks_float) {
    long long v = std::strtoll(token.c_str(), &end, 10);
    if (errno == 0 && end && *end == '\0') return TomlValue(v);
  }
  double d = std::strtod(token.c_str(), &end);
  if (errno != 0 || !end || *end != '\0') fail(line, "cannot parse value '" + token + "'");
  return TomlValue(d);
}

TomlValue parse_inline_table(Cursor& cur) {
  const int line = cur.line;
  cur.take();  // {
  TomlValue::Table table;
  cur.skip_ws(false);
  if (!cur.done() && cur.peek() == '}') {
    cur.take();
    return TomlValue(std::move(table));
  }
  while (true) {
    std::string key = parse_key(cur);
    cur.skip_ws(false);
    if (cur.done() || cur.peek() != '=') fail(line, "inline table expects key = value");
    cur.take();
    cur.skip_ws(false);
    table.emplace_back(std::move(key), parse_value(cur));
    cur.skip_ws(false);
    if (cur.done()) fail(line, "unterminated inline table");
    char c = cur.take();
    if (c == '}') break;
    if (c != ',') fail(line, "inline table entries separate with commas");
    cur.skip_ws(false);
  }
  return TomlValue(std::move(table));
}

TomlValue parse_array(Cursor& cur) {
  const int line = cur.line;
  cur.take();  // [
  TomlValue::Array items;
  while (true) {
    cur.skip_ws(true);
    if (cur.done()) fail(line, "unterminated array");
    if (cur.peek() == ']') {
      cur.take();
      break;
    }
    items.push_back(parse_value(cur));
    cur.skip_ws(true);
    if (cur.done()) fail(line, "unterminated array");
    if (cur.peek() == ',') {
      cur.take();
    } else if (cur.peek() != ']') {
      fail(cur.line, "array entries separate with commas");
    }
  }
  return TomlValue(std::move(items));
}

TomlValue parse_value(Cursor& cur) {
  cur.skip_ws(false);
  if (cur.done()) fail(cur.line, "expected a value");
  if (cur.peek() == '[') return parse_array(cur);
  if (cur.peek() == '{') return parse_inline_table(cur);
  return parse_scalar(cur);
}

TomlValue* descend(TomlValue& root, const std::vector<std::string>& path, int line) {
  TomlValue* node = &root;
  for (const std::string& part : path) {
    if (!node->is_table()) fail(line, "'" + part + "' is not a table");
    TomlValue::Table& table = node->as_table();
    TomlValue* next = nullptr;
    for (auto& [key, value] : table) {
      if (key == part) {
        next = &value;
        break;
      }
    }
    if (!next) {
      table.emplace_back(part, TomlValue(TomlValue::Table{}));
      next = &table.back().second;
    }
    node = next;
  }
  return node;
}

}  // namespace

const TomlValue* TomlValue::find(const std::string& key) const {
  if (kind_ != Kind::table) return nullptr;
  for (const auto& [k, v] : table_) {
    if (k == key) return &v;
  }
  return nullptr;
}

TomlValue parse_toml(const std::string& text) {
  TomlValue root{TomlValue::Table{}};
  Cursor cur{text};
  TomlValue* current = &root;

  while (true) {
    cur.skip_ws(true);
    if (cur.done()) break;

    if (cur.peek() == '[') {
      const int line = cur.line;
      cur.take();
      std::vector<std::string> path;
      while (true) {
        path.push_back(parse_key(cur));
        cur.skip_ws(false);
        if (cur.done()) fail(line, "unterminated table header");
        char c = cur.take();
        if (c == ']') break;
        if (c != '.') fail(line, "table headers look like [a] or [a.b]");
      }
      current = descend(root, path, line);
      continue;
    }

    const int line = cur.line;
    std::string key = parse_key(cur);
    cur.skip_ws(false);
    if (cur.done() || cur.peek() != '=') fail(line, "expected '=' after key '" + key + "'");
    cur.take();
    TomlValue value = parse_value(cur);
    cur.skip_ws(false);
    if (!cur.done() && cur.peek() != '\n') {
      fail(line, "unexpected trailing characters after value for '" + key + "'");
    }
    for (const auto& [k, v] : current->as_table()) {
      if (k == key) fail(line, "duplicate key '" + key + "'");
    }
    current->as_table().emplace_back(std::move(key), std::move(value));
  }
  return root;
}

TomlValue parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::config_invalid, "cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str());
}

}  // namespace warpest::cli
