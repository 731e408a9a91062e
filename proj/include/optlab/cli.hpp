#pragma once

namespace optlab::cli {

/// Parse argv, run the selected subcommand, write outputs.
/// Exit codes: 0 success, 2 usage/validation, 3 capacity, 4 I/O.
int run(int argc, const char* const* argv);

} // namespace optlab::cli
