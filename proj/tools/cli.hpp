#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ypfa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by --preset.
std::vector<std::string> preset_names();

}  // namespace ypfa::cli
