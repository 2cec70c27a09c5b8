#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "enconv/lexicon.hpp"
#include "enconv/unl.hpp"

namespace enconv {

enum class Marker { None, SentenceHead, SentenceTail };

/// One cell of the node list.
struct Node {
  std::vector<std::string> morphemes;  // surface pieces, merged left to right
  const LexEntry* entry = nullptr;     // null for markers
  unl::UniversalWord uw;               // may be replaced by REFER
  AttributeSet attributes;
  std::vector<std::string> pending;    // UNL attribute labels
  int instance_id = 0;
  Marker marker = Marker::None;
  bool explored = false;               // has been under an analysis window

  bool is_marker() const { return marker != Marker::None; }
  bool has(std::string_view attribute) const { return attributes.contains(attribute); }
  std::string surface() const;
};

struct AntecedentKey {
  std::string gender;  // MALE, FEMALE or empty
  std::string number;  // SG, PL or empty

  friend auto operator<=>(const AntecedentKey&, const AntecedentKey&) = default;
};

AntecedentKey antecedent_key(const Node& node);

struct Antecedent {
  unl::UniversalWord uw;
  int instance_id = 0;
};

struct EmittedRelation {
  std::string label;
  int head_id = 0;
  int dependent_id = 0;
};

struct NodeSnapshot {
  std::string surface;
  std::vector<std::string> attributes;
  std::vector<std::string> pending;
};

struct TraceRecord {
  std::size_t step = 0;
  std::string rule;
  std::size_t window = 0;
  std::string before;    // node list before the step, in <<...>> notation
  std::string rendered;  // node list after the step
  bool movement_only = false;  // every action was NOP
  std::vector<NodeSnapshot> nodes;
};

/// Working state of one analysis. LAW = nodes[window], RAW = nodes[window + 1].
struct MachineState {
  std::vector<Node> nodes;
  std::size_t window = 0;
  std::vector<EmittedRelation> emitted;
  std::map<int, unl::UwInstance> instances;  // last known state per instance id
  std::map<AntecedentKey, Antecedent> antecedents;
  std::set<int> linked_ids;                  // ids shared through REFER
  std::size_t steps = 0;
  std::size_t budget = 0;
  std::vector<TraceRecord> trace;
  std::unordered_set<std::string> seen;      // state fingerprints
  int next_id = 1;

  const Node& left() const { return nodes[window]; }
  const Node& right() const { return nodes[window + 1]; }
  Node& left() { return nodes[window]; }
  Node& right() { return nodes[window + 1]; }
  /// Conditional window left of LAW, or null.
  const Node* left_context() const { return window > 0 ? &nodes[window - 1] : nullptr; }
  /// Conditional window right of RAW, or null.
  const Node* right_context() const {
    return window + 2 < nodes.size() ? &nodes[window + 2] : nullptr;
  }
  std::size_t content_count() const { return nodes.size() - 2; }
};

}  // namespace enconv
