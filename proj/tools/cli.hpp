#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grassmann::cli {

inline constexpr const char* kReportSchema = "grassmann.run-report/1";

/// Runs one subcommand. `args` excludes the program name. The JSON report
/// goes to `out` (or the --out file), diagnostics to `err`.
/// Exit codes: 0 all checks pass, 1 some check failed, 2 malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grassmann::cli
