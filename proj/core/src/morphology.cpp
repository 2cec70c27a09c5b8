#include "enconv/morphology.hpp"

#include "enconv/text.hpp"

namespace enconv::morphology {

std::size_t Segmentation::consumed_code_points() const {
  std::size_t n = text::code_point_count(root->headword);
  for (const auto* s : suffixes) n += text::code_point_count(s->headword);
  return n;
}

std::size_t word_end(std::string_view input, std::size_t position) {
  std::size_t pos = position;
  if (pos >= input.size()) return input.size();
  std::size_t next = pos;
  if (text::is_punctuation(text::next_code_point(input, next))) return next;
  while (pos < input.size()) {
    next = pos;
    char32_t c = text::next_code_point(input, next);
    if (text::is_space(c) || text::is_punctuation(c)) break;
    pos = next;
  }
  return pos;
}

namespace {

struct Search {
  const Lexicon& lexicon;
  std::string_view word;  // input truncated at the word end
  std::size_t start;
  std::size_t max_results;
  std::vector<Segmentation> results;
  Segmentation current;

  void suffixes_from(std::size_t pos) {
    if (results.size() >= max_results) return;
    if (pos == word.size()) {
      current.consumed = pos - start;
      results.push_back(current);
      return;
    }
    for (const auto& cand : lexicon.longest_prefix_candidates(word, pos)) {
      if (!cand.entry->uw.empty()) continue;
      current.suffixes.push_back(cand.entry);
      suffixes_from(pos + cand.length);
      current.suffixes.pop_back();
      if (results.size() >= max_results) return;
    }
  }
};

}  // namespace

std::vector<Segmentation> segment(const Lexicon& lexicon, std::string_view input,
                                  std::size_t position, std::size_t max_results) {
  std::size_t end = word_end(input, position);
  if (end == position) return {};
  Search search{lexicon, input.substr(0, end), position, max_results, {}, {}};
  for (const auto& root : lexicon.longest_prefix_candidates(search.word, position)) {
    search.current = Segmentation{root.entry, {}, 0};
    search.suffixes_from(position + root.length);
    if (search.results.size() >= max_results) break;
  }
  return std::move(search.results);
}

std::vector<std::string> tense_attributes(const AttributeSet& suffix) {
  std::vector<std::string> out;
  if (suffix.contains("PRGR")) {
    out = {"@present", "@progress"};
  } else if (suffix.contains("FUT")) {
    out = {"@future"};
  } else if (suffix.contains("PAST")) {
    out = {"@past"};
  } else if (suffix.contains("VI")) {
    out = {"@present"};
  }
  return out;
}

MergedAttributes merge_attributes(const AttributeSet& root, const AttributeSet& suffix) {
  MergedAttributes merged;
  merged.attributes = root;
  merged.attributes.insert(suffix.begin(), suffix.end());
  if (suffix.contains("VI")) merged.attributes.erase("ROOT");
  merged.pending = tense_attributes(suffix);
  return merged;
}

}  // namespace enconv::morphology
