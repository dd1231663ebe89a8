#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace lexctx::utf8 {

// Decodes UTF-8 into code points. Throws ArgumentError on invalid sequences.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

// Number of code points in `text`.
std::size_t length(std::string_view text);

// Code-point substring [start, end).
std::string substr(std::string_view text, std::size_t start, std::size_t end);

// Trims and collapses runs of whitespace into single spaces.
std::string normalize_whitespace(std::string_view text);

bool is_space(char32_t c);

}  // namespace lexctx::utf8
