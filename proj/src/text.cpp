#include "diatopics/text.hpp"

namespace diatopics {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(text[i]);
        char32_t cp = kReplacement;
        size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0 && i + 1 < n &&
                   (text[i + 1] & 0xC0) == 0x80) {
            cp = ((b0 & 0x1Fu) << 6) | (text[i + 1] & 0x3Fu);
            len = 2;
            if (cp < 0x80) cp = kReplacement;  // overlong
        } else if ((b0 & 0xF0) == 0xE0 && i + 2 < n &&
                   (text[i + 1] & 0xC0) == 0x80 && (text[i + 2] & 0xC0) == 0x80) {
            cp = ((b0 & 0x0Fu) << 12) | ((text[i + 1] & 0x3Fu) << 6) |
                 (text[i + 2] & 0x3Fu);
            len = 3;
            if (cp < 0x800) cp = kReplacement;
        } else if ((b0 & 0xF8) == 0xF0 && i + 3 < n &&
                   (text[i + 1] & 0xC0) == 0x80 && (text[i + 2] & 0xC0) == 0x80 &&
                   (text[i + 3] & 0xC0) == 0x80) {
            cp = ((b0 & 0x07u) << 18) | ((text[i + 1] & 0x3Fu) << 12) |
                 ((text[i + 2] & 0x3Fu) << 6) | (text[i + 3] & 0x3Fu);
            len = 4;
            if (cp < 0x10000 || cp > 0x10FFFF) cp = kReplacement;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

bool is_letter(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
    }
    // Latin-1 supplement letters, minus multiplication/division signs.
    if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
    // Latin Extended-A and -B (covers Czech, Slovak, Polish, ...).
    if (cp >= 0x100 && cp <= 0x24F) return true;
    // Greek and Coptic (letters only, skip accents/punctuation blocks).
    if (cp >= 0x386 && cp <= 0x3FF) return cp != 0x387;
    // Cyrillic plus supplement.
    if (cp >= 0x400 && cp <= 0x52F) return true;
    // Latin Extended Additional (historic orthographies).
    if (cp >= 0x1E00 && cp <= 0x1EFF) return true;
    return false;
}

bool is_digit(char32_t cp) {
    return cp >= '0' && cp <= '9';
}

bool is_whitespace(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
           cp == '\v' || cp == 0xA0 || cp == 0x2028 || cp == 0x2029 ||
           (cp >= 0x2000 && cp <= 0x200A) || cp == 0x3000;
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    // Latin-1: À..Þ except ×.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    // Latin Extended-A comes in upper/lower pairs with shifting parity.
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;  // Ÿ
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    // Greek capitals.
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
    // Cyrillic: Ѐ..Џ, А..Я.
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    // Latin Extended Additional pairs.
    if (cp >= 0x1E00 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
    return cp;
}

std::string lowercase(std::string_view text) {
    auto cps = decode_utf8(text);
    for (auto& cp : cps) cp = to_lower(cp);
    return encode_utf8(cps);
}

bool is_blank(std::string_view text) {
    for (char32_t cp : decode_utf8(text)) {
        if (!is_whitespace(cp)) return false;
    }
    return true;
}

std::string_view trim(std::string_view text) {
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && (text[begin] == ' ' || text[begin] == '\t' ||
                           text[begin] == '\n' || text[begin] == '\r')) {
        ++begin;
    }
    while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                           text[end - 1] == '\n' || text[end - 1] == '\r')) {
        --end;
    }
    return text.substr(begin, end - begin);
}

}  // namespace diatopics
