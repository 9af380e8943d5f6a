#include "lodrec/ddc.hpp"

#include "lodrec/error.hpp"

namespace lodrec {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim_ascii(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

DdcCode parse_code(std::string_view s) {
  std::string_view t = trim_ascii(s);
  auto reject = [&](const char* why) -> DdcCode {
    throw ParseError("invalid DDC notation '" + std::string(s) + "': " + why);
  };
  if (t.empty()) return reject("empty");

  std::size_t i = 0;
  while (i < t.size() && is_digit(t[i])) ++i;
  if (i == 0) return reject("must start with a digit");
  if (i > 3) return reject("more than three digits before the decimal point");

  DdcCode code;
  code.raw = std::string(t);
  code.digits = std::string(t.substr(0, i));
  if (i == t.size()) return code;

  if (t[i] != '.') return reject("unexpected character");
  std::size_t j = i + 1;
  if (j == t.size()) return reject("no digits after the decimal point");
  for (; j < t.size(); ++j) {
    if (!is_digit(t[j])) return reject(t[j] == '.' ? "more than one decimal point"
                                                   : "unexpected character");
    code.digits += t[j];
  }
  return code;
}

std::string to_string(const Fragment& f) { return f.prefix + "@" + std::to_string(f.level); }

std::string_view to_string(FragmentMode mode) noexcept {
  return mode == FragmentMode::paper_faithful ? "paper_faithful" : "zero_preserving";
}

FragmentMode parse_fragment_mode(std::string_view name) {
  if (name == "paper_faithful") return FragmentMode::paper_faithful;
  if (name == "zero_preserving") return FragmentMode::zero_preserving;
  throw UsageError("unknown fragmentation mode '" + std::string(name) +
                   "' (expected paper_faithful or zero_preserving)");
}

std::vector<Fragment> fragment(const DdcCode& code, FragmentMode mode) {
  std::string_view digits = code.digits;
  if (mode == FragmentMode::paper_faithful) {
    std::size_t nz = digits.find_first_not_of('0');
    digits = nz == std::string_view::npos ? digits.substr(0, 1) : digits.substr(nz);
  }
  std::vector<Fragment> out;
  out.reserve(digits.size());
  for (std::size_t len = 1; len <= digits.size(); ++len) {
    out.push_back(Fragment{std::string(digits.substr(0, len)), len});
  }
  return out;
}

}  // namespace lodrec
