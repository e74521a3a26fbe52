#pragma once

#include <string>

namespace exrouter::cli {

/// Runs the cross-module invariant suites; prints a JSON report to stdout.
/// Returns true iff every check passes. `level` is "fast" or "full".
bool run_verify(const std::string& level);

}  // namespace exrouter::cli
