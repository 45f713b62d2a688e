#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mgcolor::cli {

// Runs one command line (args[0] is the program name) and returns the exit
// code: 0 success, 1 usage/parse/IO failure, 2 domain failure. Data goes to
// `out`, one-line JSON error records to `err`. An input named "-" is read
// from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace mgcolor::cli
