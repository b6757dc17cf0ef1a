#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqcoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;

/// Runs one invocation. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Library operation -> the subcommand that exposes it.
struct Coverage {
  std::string_view operation;
  std::string_view subcommand;
};

std::span<const Coverage> coverage_registry();
std::vector<std::string> subcommand_names();

}  // namespace eqcoh::cli
