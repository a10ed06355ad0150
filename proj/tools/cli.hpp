#ifndef RELAXDIFF_TOOLS_CLI_HPP
#define RELAXDIFF_TOOLS_CLI_HPP

#include <iosfwd>

namespace relaxdiff::cli {

/// Parses flags (and an optional `key = value` config file via --config,
/// overridden by flags), runs the pipeline and reports PSNR on `out`.
/// Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relaxdiff::cli

#endif  // RELAXDIFF_TOOLS_CLI_HPP
