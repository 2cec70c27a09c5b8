#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "enconv/engine.hpp"
#include "enconv/unl.hpp"

namespace enconv::cli {

enum class Format { Unl, Dot, Trace, Records };

struct RunConfig {
  std::vector<std::string> dictionaries;
  std::vector<std::string> rules;
  std::string input;  // empty or "-" reads standard input
  Format format = Format::Unl;
  unl::BracketStyle style = unl::BracketStyle::S;
  bool strict_registry = false;
  std::optional<std::size_t> budget;
  IdPolicy ids = IdPolicy::Minimal;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailures = 1;
inline constexpr int kConfigError = 2;

/// One sentence per line from `in`; blank lines are skipped.
int cmd_convert(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

int cmd_check(const std::vector<std::string>& dictionaries, const std::vector<std::string>& rules,
              std::ostream& out, std::ostream& err);

int cmd_trace(const RunConfig& config, const std::string& sentence, std::ostream& out,
              std::ostream& err);

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace enconv::cli
