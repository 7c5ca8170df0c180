#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace diatopics {

// Minimal UTF-8 / Unicode helpers covering the scripts this toolkit targets
// (Latin incl. extended ranges for Czech/German, Cyrillic, basic Greek).
// Malformed UTF-8 bytes decode to U+FFFD and are treated as non-letters.

std::vector<char32_t> decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_whitespace(char32_t cp);
char32_t to_lower(char32_t cp);

// Whole-string lowercase via to_lower on each codepoint.
std::string lowercase(std::string_view text);

// True if the string is only whitespace (or empty).
bool is_blank(std::string_view text);

// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view text);

}  // namespace diatopics
