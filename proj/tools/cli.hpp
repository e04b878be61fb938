#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gjpo/error.hpp"

namespace gjpo::cli {

/// Environment variables visible to the CLI, injectable for tests.
struct Environment {
  std::map<std::string, std::string> variables;

  static Environment from_process();
  std::optional<std::string> get(const std::string& name) const;
};

/// Resolved settings. Precedence: flag > environment > config file > default.
struct Settings {
  unsigned max_order = 20;
  unsigned jobs = 1;
  bool emit_sequences = false;
  bool json = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitRejectedInput = 4;
inline constexpr int kExitNoRootedTrees = 5;
inline constexpr int kExitComplexityTooLow = 6;

int exit_code(ErrorKind kind) noexcept;

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and bad
/// values are Parse errors.
void apply_config_text(const std::string& text, Settings& settings);

/// args excludes the program name. Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env);

}  // namespace gjpo::cli
