#include "worms/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace worms {

const std::string& TomlValue::as_string() const {
  if (kind != String) throw std::invalid_argument("expected a string value");
  return text;
}

double TomlValue::as_double() const {
  if (kind != Number) throw std::invalid_argument("expected a number value");
  return number;
}

long TomlValue::as_int() const {
  double d = as_double();
  long n = static_cast<long>(d);
  if (static_cast<double>(n) != d)
    throw std::invalid_argument("expected an integer value");
  return n;
}

bool TomlValue::as_bool() const {
  if (kind != Boolean) throw std::invalid_argument("expected a boolean value");
  return boolean;
}

const std::vector<TomlValue>& TomlValue::as_array() const {
  if (kind != Array) throw std::invalid_argument("expected an array value");
  return array;
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

TomlValue parse_value(const std::string& s, size_t& i) {
  skip_ws(s, i);
  if (i >= s.size()) throw std::invalid_argument("missing value");
  TomlValue v;
  char c = s[i];
  if (c == '"') {
    v.kind = TomlValue::String;
    ++i;
    while (i < s.size() && s[i] != '"') {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      v.text += s[i++];
    }
    if (i >= s.size()) throw std::invalid_argument("unterminated string");
    ++i;
    return v;
  }
  if (c == '[') {
    v.kind = TomlValue::Array;
    ++i;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') { ++i; return v; }
    while (true) {
      v.array.push_back(parse_value(s, i));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') { ++i; skip_ws(s, i); continue; }
      if (i < s.size() && s[i] == ']') { ++i; return v; }
      throw std::invalid_argument("expected ',' or ']' in array");
    }
  }
  if (s.compare(i, 4, "true") == 0) {
    v.kind = TomlValue::Boolean;
    v.boolean = true;
    i += 4;
    return v;
  }
  if (s.compare(i, 5, "false") == 0) {
    v.kind = TomlValue::Boolean;
    v.boolean = false;
    i += 5;
    return v;
  }
  size_t j = i;
  while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                          s[j] == '+' || s[j] == '-' || s[j] == '.' ||
                          s[j] == '_'))
    ++j;
  if (j == i) throw std::invalid_argument("unrecognized value");
  v.kind = TomlValue::Number;
  v.text = s.substr(i, j - i);
  size_t used = 0;
  v.number = std::stod(v.text, &used);
  if (used != v.text.size())
    throw std::invalid_argument("malformed number '" + v.text + "'");
  i = j;
  return v;
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t i = 0;
    skip_ws(line, i);
    if (i >= line.size() || line[i] == '#') continue;
    try {
      if (line[i] == '[') {
        size_t close = line.find(']', i);
        if (close == std::string::npos)
          throw std::invalid_argument("unterminated section header");
        section = line.substr(i + 1, close - i - 1);
        if (section.empty())
          throw std::invalid_argument("empty section name");
        continue;
      }
      size_t eq = line.find('=', i);
      if (eq == std::string::npos)
        throw std::invalid_argument("expected key = value");
      std::string key = line.substr(i, eq - i);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
        key.pop_back();
      if (key.empty()) throw std::invalid_argument("empty key");
      size_t j = eq + 1;
      TomlValue v = parse_value(line, j);
      skip_ws(line, j);
      if (j < line.size() && line[j] != '#')
        throw std::invalid_argument("trailing characters after value");
      std::string full = section.empty() ? key : section + "." + key;
      out[full] = std::move(v);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return out;
}

TomlTable load_toml(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_toml(buf.str());
}

const TomlValue& toml_get(const TomlTable& t, const std::string& key) {
  auto it = t.find(key);
  if (it == t.end()) throw std::invalid_argument("missing key: " + key);
  return it->second;
}

bool toml_has(const TomlTable& t, const std::string& key) {
  return t.count(key) != 0;
}

}  // namespace worms
