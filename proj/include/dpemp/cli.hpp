#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpemp::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kSchemaError = 3,
  kGeometryError = 4,
  kUsage = 64,
  kComputation = 70,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpemp::cli
