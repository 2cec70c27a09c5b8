#include <doctest.h>

#include <stdexcept>

#include "enconv/text.hpp"

using namespace enconv;

TEST_CASE("nfc composes and is idempotent") {
  // য + nukta stays decomposed under NFC (composition exclusion).
  std::string decomposed = "\xE0\xA6\xAF\xE0\xA6\xBC";
  std::string precomposed = "\xE0\xA7\x9F";
  CHECK(text::nfc(precomposed) == decomposed);
  CHECK(text::nfc(decomposed) == decomposed);
  CHECK(text::is_nfc(decomposed));
  CHECK_FALSE(text::is_nfc(precomposed));

  // e + combining acute composes.
  CHECK(text::nfc("e\xCC\x81") == "\xC3\xA9");
  CHECK(text::nfc("") == "");
}

TEST_CASE("malformed utf-8 is rejected") {
  CHECK_THROWS_AS(text::nfc("\xFF\xFE"), std::invalid_argument);
  std::size_t pos = 0;
  CHECK_THROWS_AS(text::next_code_point("\xE0\xA6", pos), std::invalid_argument);
}

TEST_CASE("code point iteration") {
  std::string s = "a\xE0\xA6\x95?";  // a, ক, ?
  CHECK(text::code_point_count(s) == 3);
  CHECK(text::code_point_offsets(s) == std::vector<std::size_t>{0, 1, 4, 5});
  CHECK(text::is_boundary(s, 1));
  CHECK_FALSE(text::is_boundary(s, 2));
  CHECK(text::is_boundary(s, 5));

  std::size_t pos = 1;
  CHECK(text::next_code_point(s, pos) == U'ক');
  CHECK(pos == 4);
  CHECK(text::encode(U'ক') == "\xE0\xA6\x95");
}

TEST_CASE("classes and trimming") {
  CHECK(text::is_space(U' '));
  CHECK(text::is_space(U' '));
  CHECK_FALSE(text::is_space(U'a'));
  CHECK(text::is_punctuation(U'?'));
  CHECK(text::is_punctuation(U'।'));
  CHECK_FALSE(text::is_punctuation(U'ক'));
  CHECK(text::trim("  x y \t") == "x y");
  CHECK(text::collapse_spaces("  a \t b\n c ") == "a b c");
}
