#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. All offsets are byte offsets that sit on code point
// boundaries; all matching in the library happens on NFC text.
namespace enconv::text {

/// NFC-normalizes UTF-8 text. Throws std::invalid_argument on malformed input.
std::string nfc(std::string_view utf8);

bool is_nfc(std::string_view utf8);

/// Decodes the code point at `pos`, advancing `pos` past it.
char32_t next_code_point(std::string_view utf8, std::size_t& pos);

std::size_t code_point_count(std::string_view utf8);

/// Byte offsets of every code point start, followed by utf8.size().
std::vector<std::size_t> code_point_offsets(std::string_view utf8);

bool is_boundary(std::string_view utf8, std::size_t pos);

bool is_space(char32_t c);

/// Sentence punctuation that detaches from words: ? ! । ॥ , ; .
bool is_punctuation(char32_t c);

std::string_view trim(std::string_view s);

/// Trims and collapses internal whitespace runs into one ASCII space.
std::string collapse_spaces(std::string_view s);

std::string encode(char32_t c);

}  // namespace enconv::text
