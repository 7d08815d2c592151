#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cli/suite.hpp"

namespace tetra::cli {

enum class Format { Json, Text };

enum ExitCode : int { kAllPass = 0, kCheckFailure = 1, kUsageError = 2 };

struct CommandOutput {
  int code = kAllPass;
  std::string text;
};

/// Exit code for a library error: malformed input maps to a usage error,
/// everything else is a failed check.
int exit_code_for(const Error& e) noexcept;

CommandOutput cmd_verify_bidisc(Index N, const TolerancePolicy& pol, Format format);
CommandOutput cmd_random_suite(const SuiteConfig& cfg, Format format);
CommandOutput cmd_model_check(const std::string& triple_file, std::optional<Index> N, std::uint64_t seed,
                              const TolerancePolicy& pol, Format format);
CommandOutput cmd_blh(const std::string& theta_file, const std::string& symbols_file, std::optional<Index> N,
                      const TolerancePolicy& pol, Format format);

}  // namespace tetra::cli
