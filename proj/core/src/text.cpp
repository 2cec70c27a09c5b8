#include "enconv/text.hpp"

#include <stdexcept>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace enconv::text {
namespace {

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || norm == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *norm;
}

icu::UnicodeString to_unicode(std::string_view utf8) {
  // Validate first: fromUTF8 silently substitutes U+FFFD.
  std::size_t pos = 0;
  while (pos < utf8.size()) next_code_point(utf8, pos);
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

}  // namespace

char32_t next_code_point(std::string_view utf8, std::size_t& pos) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  auto i = static_cast<int32_t>(pos);
  const auto length = static_cast<int32_t>(utf8.size());
  UChar32 c = 0;
  U8_NEXT(s, i, length, c);
  if (c < 0) {
    throw std::invalid_argument("malformed UTF-8 at byte " + std::to_string(pos));
  }
  pos = static_cast<std::size_t>(i);
  return static_cast<char32_t>(c);
}

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc_instance().normalize(to_unicode(utf8), status);
  if (U_FAILURE(status)) {
    throw std::invalid_argument("NFC normalization failed");
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool is_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  bool result = nfc_instance().isNormalized(to_unicode(utf8), status);
  return U_SUCCESS(status) && result;
}

std::size_t code_point_count(std::string_view utf8) {
  std::size_t pos = 0;
  std::size_t count = 0;
  while (pos < utf8.size()) {
    next_code_point(utf8, pos);
    ++count;
  }
  return count;
}

std::vector<std::size_t> code_point_offsets(std::string_view utf8) {
  std::vector<std::size_t> offsets;
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    offsets.push_back(pos);
    next_code_point(utf8, pos);
  }
  offsets.push_back(utf8.size());
  return offsets;
}

bool is_boundary(std::string_view utf8, std::size_t pos) {
  if (pos == utf8.size()) return true;
  if (pos > utf8.size()) return false;
  return (static_cast<unsigned char>(utf8[pos]) & 0xC0) != 0x80;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
    case 0x00A0: case 0x2000: case 0x2001: case 0x2002: case 0x2003:
    case 0x2004: case 0x2005: case 0x2006: case 0x2007: case 0x2008:
    case 0x2009: case 0x200A: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return false;
  }
}

bool is_punctuation(char32_t c) {
  switch (c) {
    case U'?': case U'!': case U',': case U';': case U'.':
    case 0x0964:  // danda
    case 0x0965:  // double danda
      return true;
    default:
      return false;
  }
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(s)) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string encode(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

}  // namespace enconv::text
