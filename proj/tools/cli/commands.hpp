#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace latgate::cli {

/// Exit codes of the latgate tool.
enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kUsage = 2,
    kNonConvergence = 3,
    kNonIdentifiable = 4,
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr int kSchemaVersion = 1;

/// Parses argv, runs one subcommand (kappa, map, budget, gate, ensemble) and
/// returns the process exit code. Results go to `out` unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, used for the provenance config hash.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace latgate::cli
