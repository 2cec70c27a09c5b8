#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "enconv/unl.hpp"

namespace enconv {

using AttributeSet = std::set<std::string, std::less<>>;

/// One dictionary line: `[HW]{ID}"UW"(ATTR,...)<FLG,FRE,PRI>`.
struct LexEntry {
  std::string headword;  // NFC
  std::string id;
  unl::UniversalWord uw;
  std::vector<std::string> attributes;  // declaration order, duplicate-free
  char flag = 'B';
  std::uint64_t frequency = 0;
  std::uint64_t priority = 0;

  bool has(std::string_view attribute) const;
  AttributeSet attribute_set() const;

  friend bool operator==(const LexEntry&, const LexEntry&) = default;
};

struct Candidate {
  const LexEntry* entry = nullptr;
  std::size_t length = 0;  // bytes of input matched
  std::size_t index = 0;   // position in Lexicon::entries()
};

/// Immutable dictionary with a headword index. Copies are independent.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexEntry> entries);

  /// Entries of every part, in argument order.
  static Lexicon concat(std::span<const Lexicon> parts);

  const std::vector<LexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Indices of all entries with exactly this headword, in file order.
  std::span<const std::size_t> lookup(std::string_view headword) const;

  /// Every entry whose headword is a prefix of `input` at byte offset
  /// `position` (a code point boundary of NFC text). Ordered by longer match,
  /// higher priority, higher frequency, then file order.
  std::vector<Candidate> longest_prefix_candidates(std::string_view input,
                                                   std::size_t position) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<LexEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::size_t max_headword_code_points_ = 0;
};

/// Candidate ordering used by the lexicon and by segmentation.
bool candidate_before(const Candidate& a, const Candidate& b);

/// Parses dictionary text. Blank lines and lines starting with '#' are
/// skipped. The first malformed line throws ParseError.
Lexicon parse_dictionary(std::string_view source, std::string_view origin);

std::string serialize_entry(const LexEntry& entry);
std::string serialize_dictionary(const Lexicon& lexicon);

}  // namespace enconv
