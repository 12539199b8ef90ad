#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace memspike {

// The memspike command line, callable in-process. args excludes the
// program name. Returns the process exit code: 0 on success, 1 when an
// assertion or decode failed, 2 on usage or file-format problems.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace memspike
