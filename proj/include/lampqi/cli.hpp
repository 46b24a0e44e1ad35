#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lampqi::cli {

/// Exit codes: 0 success, 1 a verifier found violations or a witness,
/// 2 usage, parse or domain errors.
enum ExitCode : int { ok = 0, violations = 1, usage = 2 };

/// Runs one command line (without the program name). Output goes to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lampqi::cli
