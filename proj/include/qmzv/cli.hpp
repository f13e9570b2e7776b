#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmzv {

/// Entry point of the qmzv tool. Exit codes: 0 ok, 1 verification failure, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmzv
