#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end. Exit codes: 0 success, 2 mathematical precondition
// violated, 3 input or parse error, 4 internal numerical failure (including
// a failed --check-oracle comparison).

namespace ftn {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftn
