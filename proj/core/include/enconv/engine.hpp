#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "enconv/lexicon.hpp"
#include "enconv/machine.hpp"
#include "enconv/ruleset.hpp"
#include "enconv/unl.hpp"

namespace enconv {

enum class IdPolicy {
  // ":NN" only on instances shared through REFER or that are the dependent of
  // two or more relations.
  Minimal,
  Always,
};

struct EngineOptions {
  std::size_t budget_factor = 50;     // steps allowed per initial node
  std::optional<std::size_t> budget;  // absolute override
  IdPolicy ids = IdPolicy::Minimal;
};

class AnalysisError : public std::runtime_error {
 public:
  enum class Kind { EmptySentence, UnknownWord, DeadEnd, BudgetExceeded, Cycle, InvalidAction };

  AnalysisError(Kind kind, const std::string& message, std::vector<TraceRecord> trace = {})
      : std::runtime_error(message), kind_(kind), trace_(std::move(trace)) {}

  Kind kind() const noexcept { return kind_; }
  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

 private:
  Kind kind_;
  std::vector<TraceRecord> trace_;
};

std::string_view kind_name(AnalysisError::Kind kind);

struct AnalysisResult {
  unl::UnlExpression expression;
  unl::UwInstance entry;  // the surviving predicate, carrying @entry
  std::vector<TraceRecord> trace;
};

/// The two-window node-list machine. Holds references to an immutable
/// lexicon and rule set; one Analyzer may serve many threads.
class Analyzer {
 public:
  Analyzer(const Lexicon& lexicon, const rules::RuleSet& rules, EngineOptions options = {});

  /// Tokenizes on whitespace, segments each chunk and builds
  /// SHEAD, nodes..., STAIL with the window on (SHEAD, first node).
  MachineState init(std::string_view sentence) const;

  /// Applies the best rule and returns its trace record. Returns nullopt when
  /// no rule applies and the state is final (one content node, RAW = STAIL).
  std::optional<TraceRecord> step(MachineState& state) const;

  bool is_final(const MachineState& state) const;

  /// Finalized expression for a final state.
  AnalysisResult finish(MachineState state) const;

  AnalysisResult run(std::string_view sentence) const;

  const EngineOptions& options() const { return options_; }

 private:
  void apply(MachineState& state, const rules::Rule& rule) const;

  const Lexicon& lexicon_;
  const rules::RuleSet& rules_;
  EngineOptions options_;
};

/// Node list in the step-listing notation: `/<</ a / [b] / [c] / "d e" />>/`.
/// Window nodes are bracketed, explored nodes bare, unexplored nodes grouped
/// in quotes. Sentence markers are not shown.
std::string render_state(const MachineState& state);

/// The step listing: the configuration where the first non-movement rule
/// fires, then the node list after every non-movement step, then the final
/// configuration. Pure window shifts and repeated lines are not listed.
std::string render_trace(std::span<const TraceRecord> trace);

/// One JSON object per step: {"step","rule","window","nodes":[{"surface",
/// "attributes","pending"}]}.
std::string render_records(std::span<const TraceRecord> trace);

}  // namespace enconv
