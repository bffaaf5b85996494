#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace worms {

/// Minimal TOML subset: key = value pairs, [section] headers (flattened to
/// "section.key"), # comments, and values that are quoted strings, numbers,
/// booleans, or single-line (possibly nested) arrays.
struct TomlValue {
  enum Kind { String, Number, Boolean, Array };
  Kind kind = Number;
  std::string text;  // string payload, or the literal number token
  double number = 0.0;
  bool boolean = false;
  std::vector<TomlValue> array;

  const std::string& as_string() const;
  double as_double() const;
  long as_int() const;
  bool as_bool() const;
  const std::vector<TomlValue>& as_array() const;
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);
TomlTable load_toml(const std::string& path);

/// Lookup that names the missing key in the error message.
const TomlValue& toml_get(const TomlTable& t, const std::string& key);
bool toml_has(const TomlTable& t, const std::string& key);

}  // namespace worms
