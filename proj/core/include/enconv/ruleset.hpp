#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "enconv/machine.hpp"
#include "enconv/unl.hpp"

namespace enconv::rules {

enum class Window { Left, Right };
enum class Movement { Stay, ShiftRight, ShiftLeft };

struct Condition {
  enum class Kind { Attribute, Headword, SentenceHead, SentenceTail };
  Kind kind = Kind::Attribute;
  std::string value;  // attribute token or headword
  bool negated = false;

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Conjunction of tests; empty means ANY.
struct ConditionSet {
  std::vector<Condition> tests;

  bool any() const { return tests.empty(); }
  /// A missing node (no conditional window there) only satisfies ANY.
  bool matches(const Node* node) const;

  friend bool operator==(const ConditionSet&, const ConditionSet&) = default;
};

struct AddAttr {
  Window window;
  std::string attribute;
  friend bool operator==(const AddAttr&, const AddAttr&) = default;
};
struct DelAttr {
  Window window;
  std::string attribute;
  friend bool operator==(const DelAttr&, const DelAttr&) = default;
};
/// Combines both analysis nodes into the node under `into`.
struct Merge {
  Window into;
  friend bool operator==(const Merge&, const Merge&) = default;
};
/// Emits label(head, dependent) and deletes the dependent node.
struct Rel {
  std::string label;
  Window head;
  Window dependent;
  friend bool operator==(const Rel&, const Rel&) = default;
};
struct UnlAttr {
  Window window;
  std::string label;  // @...
  friend bool operator==(const UnlAttr&, const UnlAttr&) = default;
};
struct Swap {
  friend bool operator==(const Swap&, const Swap&) = default;
};
/// Splices a lexicon node next to the named window, on its outer side.
struct Insert {
  std::string headword;
  Window side;
  friend bool operator==(const Insert&, const Insert&) = default;
};
struct Refer {
  Window window;
  friend bool operator==(const Refer&, const Refer&) = default;
};
struct Nop {
  friend bool operator==(const Nop&, const Nop&) = default;
};

using Action = std::variant<AddAttr, DelAttr, Merge, Rel, UnlAttr, Swap, Insert, Refer, Nop>;

struct Rule {
  std::string name;  // may be empty
  int priority = 0;
  ConditionSet left;
  ConditionSet right;
  std::optional<ConditionSet> left_context;
  std::optional<ConditionSet> right_context;
  std::vector<Action> actions;
  Movement movement = Movement::Stay;
  std::size_t line = 0;  // source line, not part of equality

  /// Name, or "line N" for anonymous rules.
  std::string display_name() const;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.name == b.name && a.priority == b.priority && a.left == b.left &&
           a.right == b.right && a.left_context == b.left_context &&
           a.right_context == b.right_context && a.actions == b.actions &&
           a.movement == b.movement;
  }
};

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {}

  static RuleSet concat(std::span<const RuleSet> parts);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  friend bool operator==(const RuleSet&, const RuleSet&) = default;

 private:
  std::vector<Rule> rules_;
};

/// Parses the line-oriented rule DSL:
///   210: "noun-case" L{N,PLACE} R{CASE,LOC} => ADD_ATTR(L,PLC); MERGE(L); STAY
/// With `strict`, REL labels must be registered. Throws ParseError.
RuleSet parse_rules(std::string_view source, std::string_view origin,
                    const unl::RelationRegistry* strict = nullptr);

/// Canonical one-line form; parse_rules(render(r)) == r.
std::string render(const Rule& rule);
std::string render(const RuleSet& rules);

struct Match {
  const Rule* rule = nullptr;
  std::size_t window = 0;
  const Node* left = nullptr;
  const Node* right = nullptr;
  const Node* left_context = nullptr;
  const Node* right_context = nullptr;
};

bool applicable(const Rule& rule, const MachineState& state);

/// Highest-priority applicable rule; earlier rules win ties.
std::optional<Match> select_rule(const RuleSet& rules, const MachineState& state);

// Priority bands. A rule's kind is read off its actions: REL makes it a
// composition rule; INSERT, SWAP or REFER a specific-construct rule; MERGE a
// morphological rule; attribute edits a modification rule; anything else is
// a shift rule.
enum class RuleKind { Morphological, SpecificConstruct, Modification, Composition, Shift };

RuleKind classify(const Rule& rule);
std::string_view kind_name(RuleKind kind);
/// Inclusive priority range for the kind.
std::pair<int, int> band(RuleKind kind);

struct BandViolation {
  const Rule* rule = nullptr;
  RuleKind kind = RuleKind::Shift;
  std::string message;
};

std::vector<BandViolation> check_bands(const RuleSet& rules);

/// REL labels that the registry does not know.
std::vector<std::pair<const Rule*, std::string>> unknown_labels(const RuleSet& rules,
                                                                const unl::RelationRegistry& registry);

}  // namespace enconv::rules
