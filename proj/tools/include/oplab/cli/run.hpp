#pragma once

#include <iosfwd>

#include "oplab/cli/config.hpp"
#include "oplab/cli/record.hpp"

namespace oplab::cli {

/// Dispatches to the module operation; never throws for numerical outcomes.
/// Exit codes: 0 accepted, 1 failed verification, 2 usage, 3 inconclusive.
ResultRecord run(const RunConfig& config);

/// Full command-line entry: parse, run, write the record once to `out` (or to
/// --out), diagnostics to `err`. Returns the exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oplab::cli
