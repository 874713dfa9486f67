#ifndef TEC_CLI_HPP
#define TEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tec::cli {

/// Dispatches one command line (without the program name). Writes the
/// report to `out` and diagnostics to `err`. Returns 0 on success, 1 on
/// domain errors and 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tec::cli

#endif
