#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "enconv/lexicon.hpp"
#include "enconv/ruleset.hpp"
#include "enconv/text.hpp"

namespace enconv::testing {

inline std::string data_path(const std::string& name) { return std::string(ENCONV_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

inline const Lexicon& reference_lexicon() {
  static const Lexicon lexicon =
      parse_dictionary(read_file(data_path("bangla.dict")), "bangla.dict");
  return lexicon;
}

inline const rules::RuleSet& reference_rules() {
  static const rules::RuleSet rules =
      rules::parse_rules(read_file(data_path("bangla.rules")), "bangla.rules");
  return rules;
}

// Literals in test sources are not guaranteed NFC (য় decomposes).
inline std::string bn(std::string_view s) { return text::nfc(s); }

}  // namespace enconv::testing
