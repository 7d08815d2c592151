#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace tetra::cli {

/// Parses the command line and runs one subcommand. env_tol is the value of
/// TETRALAB_TOL, if set; --tol takes precedence over it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_tol = std::nullopt);

}  // namespace tetra::cli
