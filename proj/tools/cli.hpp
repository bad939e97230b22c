#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace cosmicrng::cli {

inline constexpr std::string_view kToolName = "cosmicrng";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsageError = 2,
};

/// Runs one command line (without the program name). JSON and CSV results go
/// to `out`; diagnostics go to `err`.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a digest of a file, as 16 hex digits. Recorded per artifact in
/// run manifests.
std::string file_digest(const std::string& path);

}  // namespace cosmicrng::cli
