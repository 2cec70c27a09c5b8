#include "enconv/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "enconv/error.hpp"
#include "enconv/text.hpp"

namespace enconv {

bool LexEntry::has(std::string_view attribute) const {
  return std::find(attributes.begin(), attributes.end(), attribute) != attributes.end();
}

AttributeSet LexEntry::attribute_set() const { return {attributes.begin(), attributes.end()}; }

Lexicon::Lexicon(std::vector<LexEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_[entries_[i].headword].push_back(i);
    max_headword_code_points_ =
        std::max(max_headword_code_points_, text::code_point_count(entries_[i].headword));
  }
}

Lexicon Lexicon::concat(std::span<const Lexicon> parts) {
  std::vector<LexEntry> all;
  for (const auto& part : parts) all.insert(all.end(), part.entries().begin(), part.entries().end());
  return Lexicon(std::move(all));
}

std::span<const std::size_t> Lexicon::lookup(std::string_view headword) const {
  auto it = index_.find(std::string(headword));
  if (it == index_.end()) return {};
  return it->second;
}

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.length != b.length) return a.length > b.length;
  if (a.entry->priority != b.entry->priority) return a.entry->priority > b.entry->priority;
  if (a.entry->frequency != b.entry->frequency) return a.entry->frequency > b.entry->frequency;
  return a.index < b.index;
}

std::vector<Candidate> Lexicon::longest_prefix_candidates(std::string_view input,
                                                          std::size_t position) const {
  std::vector<Candidate> out;
  if (position >= input.size()) return out;
  std::size_t pos = position;
  for (std::size_t n = 0; n < max_headword_code_points_ && pos < input.size(); ++n) {
    text::next_code_point(input, pos);
    for (std::size_t idx : lookup(input.substr(position, pos - position))) {
      out.push_back({&entries_[idx], pos - position, idx});
    }
  }
  std::sort(out.begin(), out.end(), candidate_before);
  return out;
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::string_view origin, std::size_t line_no)
      : line_(line), origin_(origin), line_no_(line_no) {}

  LexEntry parse() {
    LexEntry entry;
    expect('[', "opening '['");
    std::string headword = until(']', "closing ']'");
    if (headword.empty()) fail("headword", "empty");
    entry.headword = text::nfc(headword);
    skip_ws();
    expect('{', "'{' of ID field");
    entry.id = std::string(text::trim(until('}', "closing '}'")));
    skip_ws();
    expect('"', "opening '\"' of universal word");
    std::size_t uw_col = pos_;
    std::string uw_text = until('"', "closing '\"' of universal word");
    try {
      entry.uw = unl::parse_universal_word(uw_text);
    } catch (const ParseError& e) {
      pos_ = uw_col + e.column() - 1;
      fail("universal word", e.element());
    }
    skip_ws();
    expect('(', "'(' of attribute list");
    std::string attrs = until(')', "closing ')' of attribute list");
    std::size_t start = 0;
    while (true) {
      auto comma = attrs.find(',', start);
      std::string token(text::trim(std::string_view(attrs).substr(start, comma - start)));
      if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) {
            return c == '#' || c == '_' || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
          })) {
        fail("attribute", "'" + token + "'");
      }
      if (entry.has(token)) fail("attribute", "duplicate '" + token + "'");
      entry.attributes.push_back(std::move(token));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    skip_ws();
    expect('<', "'<' of flag field");
    skip_ws();
    if (pos_ >= line_.size() || !std::isalpha(static_cast<unsigned char>(line_[pos_]))) {
      fail("language flag");
    }
    entry.flag = line_[pos_++];
    skip_ws();
    expect(',', "',' after flag");
    entry.frequency = integer("frequency");
    expect(',', "',' after frequency");
    entry.priority = integer("priority");
    expect('>', "closing '>'");
    skip_ws();
    if (pos_ != line_.size()) fail("end of entry", "trailing text");
    return entry;
  }

 private:
  [[noreturn]] void fail(const std::string& element, const std::string& detail = {}) const {
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < line_.size(); ++i) {
      if ((static_cast<unsigned char>(line_[i]) & 0xC0) != 0x80) ++col;
    }
    throw ParseError(std::string(origin_), line_no_, col, element, detail);
  }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  void expect(char c, const std::string& element) {
    skip_ws();
    if (pos_ >= line_.size() || line_[pos_] != c) fail(element);
    ++pos_;
  }

  std::string until(char c, const std::string& element) {
    auto end = line_.find(c, pos_);
    if (end == std::string_view::npos) fail(element);
    std::string out(line_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return out;
  }

  std::uint64_t integer(const std::string& element) {
    skip_ws();
    std::uint64_t value = 0;
    auto begin = line_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, line_.data() + line_.size(), value);
    if (ec != std::errc() || ptr == begin) fail("integer " + element);
    pos_ += static_cast<std::size_t>(ptr - begin);
    skip_ws();
    return value;
  }

  std::string_view line_;
  std::string_view origin_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

Lexicon parse_dictionary(std::string_view source, std::string_view origin) {
  std::vector<LexEntry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto trimmed = text::trim(line);
    if (!trimmed.empty() && trimmed.front() != '#') {
      try {
        entries.push_back(LineParser(line, origin, line_no).parse());
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(origin), line_no, 1, "UTF-8 text", e.what());
      }
      const auto& entry = entries.back();
      if (entry.uw.empty() && entry.attributes.empty()) {
        throw ParseError(std::string(origin), line_no, 1, "attribute list",
                         "entry without universal word needs attributes");
      }
    }
    if (end == source.size()) break;
    start = end + 1;
  }
  return Lexicon(std::move(entries));
}

std::string serialize_entry(const LexEntry& entry) {
  std::string out = "[" + entry.headword + "]{" + entry.id + "}\"" + unl::render(entry.uw) + "\"(";
  for (std::size_t i = 0; i < entry.attributes.size(); ++i) {
    if (i > 0) out += ",";
    out += entry.attributes[i];
  }
  out += ")<";
  out += entry.flag;
  out += "," + std::to_string(entry.frequency) + "," + std::to_string(entry.priority) + ">";
  return out;
}

std::string serialize_dictionary(const Lexicon& lexicon) {
  std::string out;
  for (const auto& entry : lexicon.entries()) out += serialize_entry(entry) + "\n";
  return out;
}

}  // namespace enconv
