#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace enconv::unl {

/// One restriction inside a Universal Word, e.g. `icl>move>do`. A bare
/// qualifier such as `intensifier` has an empty target.
struct Restriction {
  std::string tag;
  std::string target;

  friend bool operator==(const Restriction&, const Restriction&) = default;
  friend auto operator<=>(const Restriction&, const Restriction&) = default;
};

/// A concept token: head word plus an ordered restriction list. The empty
/// word (no head, no restrictions) is used by inflection-only lexicon entries.
struct UniversalWord {
  std::string head;
  std::vector<Restriction> restrictions;

  bool empty() const { return head.empty() && restrictions.empty(); }

  friend bool operator==(const UniversalWord&, const UniversalWord&) = default;
  friend auto operator<=>(const UniversalWord&, const UniversalWord&) = default;
};

/// Parses `head(tag>target,...)`. Whitespace between tokens is tolerated.
/// The empty string yields the empty word. Throws ParseError.
UniversalWord parse_universal_word(std::string_view text,
                                   std::string_view origin = "<uw>");

std::string render(const UniversalWord& uw);

bool is_attribute_label(std::string_view label);

/// A UW occurrence in an expression. Attributes keep insertion order.
struct UwInstance {
  UniversalWord uw;
  std::vector<std::string> attributes;
  std::optional<int> instance_id;

  friend bool operator==(const UwInstance&, const UwInstance&) = default;
};

struct ScopeRef {
  int id = 0;

  friend bool operator==(const ScopeRef&, const ScopeRef&) = default;
};

using Endpoint = std::variant<UwInstance, ScopeRef>;

struct Relation {
  std::string label;
  Endpoint head;
  Endpoint dependent;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Top-level relations plus scoped fragments (`obj:01(...)` lines belong to
/// scope 1 and are referenced elsewhere as `:01`).
struct UnlExpression {
  std::vector<Relation> relations;
  std::map<int, std::vector<Relation>> scopes;

  bool empty() const { return relations.empty() && scopes.empty(); }

  friend bool operator==(const UnlExpression&, const UnlExpression&) = default;
};

class RelationRegistry {
 public:
  /// agt obj plc plt plf pur met man tim pos ben
  static RelationRegistry builtin();

  bool contains(std::string_view label) const;
  void add(std::string label);
  const std::set<std::string, std::less<>>& labels() const { return labels_; }

 private:
  std::set<std::string, std::less<>> labels_;
};

bool is_relation_label(std::string_view label);

enum class BracketStyle { S, Unl };

/// Checks the type invariants: attribute syntax and uniqueness, no self loops,
/// resolvable scope references, at most one @entry per scope. When `strict`
/// is given, every label must be registered. Throws std::invalid_argument.
void validate(const UnlExpression& expr, const RelationRegistry* strict = nullptr);

/// Canonical text: one relation per line, `label(head, dependent)`.
/// Top-level relations come first, then scoped relations by scope id.
std::string serialize(const UnlExpression& expr, BracketStyle style = BracketStyle::S,
                      const RelationRegistry* strict = nullptr);

std::string render(const UwInstance& instance);
std::string render(const Endpoint& endpoint);

/// Accepts either delimiter style and arbitrary whitespace between tokens.
/// Throws ParseError with line and column.
UnlExpression parse_expression(std::string_view text, std::string_view origin = "<unl>");

/// Graphviz digraph: one node per distinct UW instance, a cluster per scope,
/// one labeled edge per relation.
std::string to_dot(const UnlExpression& expr);

struct NormalizedRelation {
  int scope = 0;  // 0 = top level
  std::string label;
  std::string head;
  std::vector<std::string> head_attributes;  // sorted
  std::string dependent;
  std::vector<std::string> dependent_attributes;  // sorted

  friend bool operator==(const NormalizedRelation&, const NormalizedRelation&) = default;
  friend auto operator<=>(const NormalizedRelation&, const NormalizedRelation&) = default;
};

/// Sorted multiset of relations with instance ids and restrictions erased.
using NormalForm = std::vector<NormalizedRelation>;

NormalForm normalize(const UnlExpression& expr);

}  // namespace enconv::unl
