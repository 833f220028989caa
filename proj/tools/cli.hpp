#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctreg::cli {

/// Runs one `ctreg` invocation. args excludes the program name.
/// Returns 0 on success, 2 on usage errors and 1 on validation or IO
/// failures; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctreg::cli
