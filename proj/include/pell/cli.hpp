#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pell::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // malformed input or unsupported class
  kCheckFailed = 2,   // verification or oracle comparison failed
};

/// Runs one command line (without the program name). Output records go to
/// `out`, diagnostics to `err`; `in` is read by `verify --stdin`.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace pell::cli
