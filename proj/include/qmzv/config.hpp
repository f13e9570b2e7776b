#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qmzv {

// Flat key = value file, '#' starts a comment. Keys: order, weight, depth, beta, format.
struct Config {
  int order = 50;
  int weight = 8;  // coefficient window of the Eisenstein model
  int depth = 2;
  std::string beta = "builtin";
  std::string format = "text";

  void validate() const;
};

Config parse_config(std::string_view text);
Config load_config(const std::string& path);
/// QMZV_ORDER overrides the order when set.
void apply_environment(Config& c);

}  // namespace qmzv
