#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nfagen::cli {

// Runs the nfagen command line with `args` (program name excluded).
// Exit codes: 0 success (or "isomorphic"), 1 "not isomorphic", 2 usage,
// parse or validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nfagen::cli
