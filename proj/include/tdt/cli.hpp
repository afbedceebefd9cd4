#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdt::cli {

enum ExitCode : int { ok = 0, usage_error = 1, io_error = 2, data_error = 3 };

/// Runs one `tdt` invocation. `args` excludes the program name. Normal output
/// goes to `out`; diagnostics (one line per failure) go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace tdt::cli
