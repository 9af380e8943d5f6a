#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lodrec {

/// A numeric Dewey Decimal Classification notation such as "005.133".
struct DdcCode {
  std::string raw;     // trimmed notation as written
  std::string digits;  // raw without the decimal point, e.g. "005133"

  bool operator==(const DdcCode&) const = default;
};

/// Parses `1-3 digits ["." 1+ digits]` after trimming surrounding whitespace.
/// Auxiliary-table notations ("T1--0901") and anything else throw ParseError.
DdcCode parse_code(std::string_view s);

/// One ancestor class of a notation: a digit prefix whose length is its hierarchy level.
struct Fragment {
  std::string prefix;
  std::size_t level = 0;

  bool operator==(const Fragment&) const = default;
  /// Vocabulary order: level first, then prefix.
  std::strong_ordering operator<=>(const Fragment& other) const {
    if (auto c = level <=> other.level; c != 0) return c;
    return prefix.compare(other.prefix) <=> 0;
  }
};

/// "574@3"
std::string to_string(const Fragment& f);

/// How leading zeros are treated when splitting a notation into fragments.
///  - paper_faithful: leading zeros are stripped first, so 005.74 yields 5, 57, 574.
///  - zero_preserving: every prefix of the full digit string, so 005.74 yields
///    0, 00, 005, 0057, 00574 and stays distinct from class 500.
enum class FragmentMode { paper_faithful, zero_preserving };

std::string_view to_string(FragmentMode mode) noexcept;
FragmentMode parse_fragment_mode(std::string_view name);

/// Prefix chain of the (mode-normalized) digit string, ordered by level.
std::vector<Fragment> fragment(const DdcCode& code,
                               FragmentMode mode = FragmentMode::paper_faithful);

}  // namespace lodrec
