#pragma once

#include <string>
#include <string_view>

// Unicode helpers over UTF-8 strings. Invalid UTF-8 sequences are replaced with U+FFFD.
namespace lodrec::text {

std::string to_nfc(std::string_view utf8);

/// NFC followed by full Unicode case folding.
std::string fold_case(std::string_view utf8);

/// Strips leading and trailing Unicode whitespace.
std::string trim(std::string_view utf8);

/// Authority lookup key: NFC, case-folded, trimmed, internal whitespace runs
/// collapsed to a single ASCII space.
std::string normalize_key(std::string_view utf8);

/// Number of code points.
std::size_t length(std::string_view utf8);

}  // namespace lodrec::text
