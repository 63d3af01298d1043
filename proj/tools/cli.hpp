#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdskit::cli {

enum class OutputFormat { Json, Table };

/// Parsed options shared by the subcommands.
struct CommandConfig {
    std::string subcommand;          // e.g. "wps correlators"
    std::vector<long> weights;
    int max_degree = 4;              // x-degree of the solution or correlator table
    int x_order = 6;                 // truncation order of the J-function
    double tolerance = 1e-9;
    std::string basis;
    std::string p24 = "0";
    std::string input;               // QDSystem file for `qds check`
    std::string output;              // empty: standard output
    OutputFormat format = OutputFormat::Json;
};

/// Exit codes: success, a failing verification entry, a usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name).  The document goes to
/// `out` (or the --output file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default tolerance, overridden by QDSKIT_TOLERANCE when set.
double default_tolerance();

}  // namespace qdskit::cli
