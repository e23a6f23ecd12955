#pragma once

#include <ostream>

namespace stochnd {

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
/// Returns 0 for success or a positive answer, 1 for a well-formed
/// negative answer and 2 for unusable input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stochnd
