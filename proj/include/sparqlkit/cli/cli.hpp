#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparqlkit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFatal = 1,    // usage, configuration or unrecoverable input error
  kPartial = 2,  // finished, but some records were skipped or failed
};

/// Runs one command line (`args[0]` is the program name). "-" paths refer to
/// `in`/`out`; diagnostics and report tables go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace sparqlkit::cli
