#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coronawalk::cli {

enum class Format { automatic, json, csv, text };

struct RunConfig {
  double group_tol = 1e-8;
  double support_tol = 1e-8;
  double cospectral_tol = 1e-7;
  std::int64_t ell_max = 100000;
  double target = 0.99;
  Format format = Format::automatic;
  std::optional<std::string> output_path;

  /// Throws std::invalid_argument: tolerances must lie in (0, 1e-2], ell_max >= 1,
  /// target in (0, 1].
  void validate() const;
};

/// Defaults overridden by CORONAWALK_GROUP_TOL, CORONAWALK_SUPPORT_TOL and
/// CORONAWALK_COSPECTRAL_TOL when set.
RunConfig config_from_environment();

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAnalysis = 2;

/// Runs one subcommand. `args` excludes the program name. Reports go to `out`
/// (or --output), diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coronawalk::cli
