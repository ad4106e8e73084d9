#pragma once

#include <iosfwd>

namespace resmgcn {

/// Entry point behind the `resmgcn` binary, callable in-process by tests.
/// Subcommands: train, eval, benchmark, dataset-info, gen.
/// Exit codes: 0 success, 1 runtime failure, 2 usage/config error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace resmgcn
