#pragma once

#include <string>
#include <string_view>
#include <vector>

// UTF-8 and ASCII helpers shared by the parsers and the text pipeline.
namespace bibx::str {

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string to_valid_utf8(std::string_view bytes);

// Decodes (lossily) into code points.
std::u32string decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

// Folds Latin-1 / Latin Extended-A letters to ASCII, drops combining marks and
// maps typographic dashes, quotes and spaces to their ASCII forms.
std::string fold_diacritics(std::string_view text);

std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
std::string trim(std::string_view s);
// Trims and collapses every whitespace run into one space.
std::string collapse_ws(std::string_view s);

bool iequals(std::string_view a, std::string_view b);
bool starts_with_ci(std::string_view s, std::string_view prefix);

// Splits on `delim`, ignoring delimiters nested in braces. Pieces are trimmed
// and empty pieces dropped.
std::vector<std::string> split_top_level(std::string_view s, std::string_view delim);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercase ASCII letters and digits only.
std::string alnum_key(std::string_view s);

}  // namespace bibx::str
