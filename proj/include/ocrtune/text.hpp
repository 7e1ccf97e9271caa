#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ocrtune::text {

/// Canonical composition (NFC) of a UTF-8 string. Ill-formed sequences are
/// replaced by U+FFFD.
std::string nfc(std::string_view utf8);

/// NFC, then decoded to Unicode scalar values.
std::u32string scalars(std::string_view utf8);

std::string to_utf8(std::u32string_view s);

/// Splits NFC text on runs of Unicode white space. Case and punctuation are kept.
std::vector<std::u32string> tokenize(std::string_view utf8);

}  // namespace ocrtune::text
