#ifndef WARPEST_TOOLS_TOML_HPP
#define WARPEST_TOOLS_TOML_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace warpest::cli {

/// Minimal TOML reader covering what run configs use: tables ([a] and
/// [a.b]), key = value pairs, strings, booleans, integers, floats (with
/// inf), arrays (possibly spanning lines), single-line inline tables and
/// # comments. Parse errors carry line numbers; lookup errors carry field
/// paths.
class TomlValue {
 public:
  enum class Kind { boolean, integer, real, string, array, table };

  using Array = std::vector<TomlValue>;
  using Table = std::vector<std::pair<std::string, TomlValue>>;

  TomlValue() : kind_(Kind::table) {}
  explicit TomlValue(bool b) : kind_(Kind::boolean), bool_(b) {}
  explicit TomlValue(long long i) : kind_(Kind::integer), int_(i) {}
  explicit TomlValue(double d) : kind_(Kind::real), real_(d) {}
  explicit TomlValue(std::string s) : kind_(Kind::string), string_(std::move(s)) {}
  explicit TomlValue(Array a) : kind_(Kind::array), array_(std::move(a)) {}
  explicit TomlValue(Table t) : kind_(Kind::table), table_(std::move(t)) {}

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::table; }
  bool is_array() const { return kind_ == Kind::array; }
  bool is_string() const { return kind_ == Kind::string; }
  bool is_number() const { return kind_ == Kind::real || kind_ == Kind::integer; }
  bool is_bool() const { return kind_ == Kind::boolean; }

  bool as_bool() const { return bool_; }
  long long as_int() const { return kind_ == Kind::integer ? int_ : static_cast<long long>(real_); }
  double as_double() const { return kind_ == Kind::real ? real_ : static_cast<double>(int_); }
  const std::string& as_string() const { return string_; }
  const Array& as_array() const { return array_; }
  const Table& as_table() const { return table_; }
  Table& as_table() { return table_; }

  const TomlValue* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }

 private:
  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double real_ = 0.0;
  std::string string_;
  Array array_;
  Table table_;
};

/// Parses a full document into the root table. Throws warpest::Error with
/// code config_invalid on malformed input.
TomlValue parse_toml(const std::string& text);
TomlValue parse_toml_file(const std::string& path);

}  // namespace warpest::cli

#endif  // WARPEST_TOOLS_TOML_HPP
