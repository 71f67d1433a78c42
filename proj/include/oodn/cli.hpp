// Command-line front end. Exit codes: 0 ok, 1 diagnostics found,
// 2 parse/validation/plan error, 3 usage error.

#ifndef OODN_CLI_HPP_
#define OODN_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace oodn {

enum ExitStatus : int { kExitOk = 0, kExitDiagnostics = 1, kExitInvalid = 2, kExitUsage = 3 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oodn

#endif  // OODN_CLI_HPP_
