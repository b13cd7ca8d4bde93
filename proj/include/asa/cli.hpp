#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asa {

// Runs one CLI invocation; args excludes the program name. Returns the
// process exit code: 0 success, 1 domain error (JSON error object on err),
// 2 usage error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace asa
