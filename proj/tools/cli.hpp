#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace synchrolab::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kCapacity = 2,
  kNotSynchronizable = 3,
};

/// Runs one command line (args[0] is the program name). Results go to `out`,
/// diagnostics and usage to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace synchrolab::cli
