#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace argimpact::text {

/// Tokenizer used everywhere a claim text is turned into tokens.
/// Lowercases ASCII letters and splits on ASCII non-alphanumeric bytes.
/// Bytes >= 0x80 count as word characters so multi-byte UTF-8 sequences
/// stay inside a single token.
std::vector<std::string> tokenize(std::string_view s);

/// Splits on sentence terminators (. ! ?); runs of terminators count once.
/// Returns at least one sentence if the input has any non-terminator content.
std::vector<std::string> split_sentences(std::string_view s);

/// Backslash escaping for tab-separated fields: \\ \t \n \r.
std::string escape_field(std::string_view s);

/// Inverse of escape_field. Unknown escapes raise DataError.
std::string unescape_field(std::string_view s);

/// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

/// Splits a raw line on tab characters (no unescaping).
std::vector<std::string_view> split_tabs(std::string_view line);

/// Lossless formatting for doubles (round-trips through strtod).
std::string format_double(double v);

/// Fixed two-decimal formatting used by report tables.
std::string format_fixed2(double v);

}  // namespace argimpact::text
