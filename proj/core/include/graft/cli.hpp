#ifndef GRAFT_CLI_HPP
#define GRAFT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace graft::cli {

/// Entry point behind the `graft` binary. `args` excludes the program name.
/// Exit codes: 0 success without findings, 1 findings reported, 2 usage,
/// input, or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graft::cli

#endif
