#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "enconv/lexicon.hpp"

namespace enconv::morphology {

/// A surface word split into a root entry and inflection-only suffix entries
/// (entries whose universal word is empty).
struct Segmentation {
  const LexEntry* root = nullptr;
  std::vector<const LexEntry*> suffixes;
  std::size_t consumed = 0;  // bytes

  std::size_t consumed_code_points() const;
};

/// End of the word starting at `position`: the next whitespace or
/// punctuation. A punctuation character forms a one-character word.
std::size_t word_end(std::string_view input, std::size_t position);

/// Every root/suffix tiling of the word at `position`, best first: longer
/// root, then longer suffixes left to right, ties broken by the lexicon's
/// candidate order. Empty when the word cannot be tiled. At most
/// `max_results` are produced.
std::vector<Segmentation> segment(const Lexicon& lexicon, std::string_view input,
                                  std::size_t position, std::size_t max_results = 64);

/// UNL attributes implied by the inflection tokens of a suffix:
///   PRGR -> @present @progress, FUT -> @future, PAST -> @past,
///   any other VI suffix -> @present.
std::vector<std::string> tense_attributes(const AttributeSet& suffix);

struct MergedAttributes {
  AttributeSet attributes;
  std::vector<std::string> pending;  // UNL attribute labels, insertion order
};

/// Union of both sets. ROOT is dropped once a VI suffix merges.
MergedAttributes merge_attributes(const AttributeSet& root, const AttributeSet& suffix);

}  // namespace enconv::morphology
