#include "qmzv/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qmzv/errors.hpp"

namespace qmzv {

namespace {

std::string trim(std::string_view s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

int to_int(const std::string& v, const std::string& key, std::size_t pos) {
  try {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("config: " + key + " needs an integer", pos);
  }
}

}  // namespace

void Config::validate() const {
  if (order < 1) throw DomainError("order must be at least 1");
  if (weight < 1) throw DomainError("weight must be at least 1");
  if (depth < 1 || depth > 3) throw DomainError("depth must be between 1 and 3");
  if (format != "text" && format != "json") throw DomainError("format must be text or json");
}

Config parse_config(std::string_view text) {
  Config c;
  std::size_t offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t here = offset;
    offset += line.size() + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("config: expected key = value", here);
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key == "order") c.order = to_int(value, key, here);
    else if (key == "weight") c.weight = to_int(value, key, here);
    else if (key == "depth") c.depth = to_int(value, key, here);
    else if (key == "beta") c.beta = value;
    else if (key == "format") c.format = value;
    else throw ParseError("config: unknown key '" + key + "'", here);
  }
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void apply_environment(Config& c) {
  if (const char* v = std::getenv("QMZV_ORDER"); v && *v) {
    c.order = to_int(v, "QMZV_ORDER", 0);
    c.validate();
  }
}

}  // namespace qmzv
