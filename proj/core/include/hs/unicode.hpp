#pragma once

#include <string>
#include <string_view>

// UTF-8 <-> code point conversion and normalization helpers. All character
// offsets in the library are code point offsets into NFC text.
namespace hs::unicode {

std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);

std::string nfc(std::string_view utf8);
std::string nfkc(std::string_view utf8);
std::string to_lower(std::string_view utf8);

bool is_space(char32_t c);
/// Unicode punctuation (general category P*) plus the ASCII symbol set.
bool is_punct(char32_t c);

std::size_t length(std::string_view utf8);

/// Code point slice [start, end) of a UTF-8 string.
std::string slice(std::string_view utf8, std::size_t start, std::size_t end);

std::string trim(std::string_view text);
/// Runs of whitespace become a single ASCII space; leading/trailing removed.
std::string collapse_whitespace(std::string_view text);

}  // namespace hs::unicode
