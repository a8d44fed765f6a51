#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace momentbody::cli {

// Runs one command line (without the program name). Returns the process
// exit code: 0 success, 1 failed hard assertion in an experiment config,
// 2 malformed input, 3 mathematical domain error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momentbody::cli
