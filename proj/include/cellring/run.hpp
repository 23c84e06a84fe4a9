#pragma once

#include <iosfwd>

#include "cellring/config.hpp"

namespace cellring {

enum ExitCode : int {
    exit_ok = 0,
    exit_other = 1,
    exit_config = 2,
    exit_numerical = 3,
    exit_io = 4,
};

/// Executes cfg.command and writes its artifacts under cfg.out:
/// metadata.yaml (the resolved config, results appended as comments), one or
/// more CSV files and, unless cfg.plot is false, a gnuplot script per CSV.
/// Errors are reported on `err`; the return value is an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace cellring
