#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitScale = 3;
inline constexpr int kExitUsage = 64;

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rainbow::cli
