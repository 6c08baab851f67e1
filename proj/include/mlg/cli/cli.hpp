#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mlg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kVersion = "0.1.0";

// `args` excludes the program name. Domain errors are written to `err` as
// `error[CODE]: message`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlg::cli
