#pragma once

#include <string>
#include <vector>

namespace jfrf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `jfrffnet` command; args excludes the program name.
/// Returns 0 on success, 1 on runtime failure, 2 on usage errors.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace jfrf::cli
