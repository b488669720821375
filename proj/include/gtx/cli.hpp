#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtx::cli {

/// Runs one command. Exit code 0 on success, 1 on domain errors,
/// 2 on usage errors. Output and diagnostics go to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gtx::cli
