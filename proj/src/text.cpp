#include "lodrec/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "lodrec/error.hpp"

namespace lodrec::text {
namespace {

const icu::Normalizer2& nfc_normalizer() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw Error(std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
  }
  return *nfc;
}

icu::UnicodeString normalized(std::string_view utf8) {
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_normalizer().normalize(in, status);
  if (U_FAILURE(status)) {
    throw Error(std::string("NFC normalization failed: ") + u_errorName(status));
  }
  return out;
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

icu::UnicodeString folded(std::string_view utf8) {
  icu::UnicodeString s = normalized(utf8);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  // Folding can produce sequences that are no longer in NFC (e.g. U+1E9E).
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_normalizer().normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(std::string("NFC normalization failed: ") + u_errorName(status));
  }
  return out;
}

}  // namespace

std::string to_nfc(std::string_view utf8) { return to_utf8(normalized(utf8)); }

std::string fold_case(std::string_view utf8) { return to_utf8(folded(utf8)); }

std::string trim(std::string_view utf8) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  int32_t begin = 0;
  int32_t end = s.length();
  while (begin < end && u_isUWhiteSpace(s.char32At(begin))) {
    begin = s.moveIndex32(begin, 1);
  }
  while (end > begin) {
    int32_t prev = s.moveIndex32(end, -1);
    if (!u_isUWhiteSpace(s.char32At(prev))) break;
    end = prev;
  }
  return to_utf8(s.tempSubStringBetween(begin, end));
}

std::string normalize_key(std::string_view utf8) {
  icu::UnicodeString s = folded(utf8);
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
    UChar32 c = s.char32At(i);
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (pending_space) {
      out.append(static_cast<UChar>(u' '));
      pending_space = false;
    }
    out.append(c);
  }
  return to_utf8(out);
}

std::size_t length(std::string_view utf8) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  return static_cast<std::size_t>(s.countChar32());
}

}  // namespace lodrec::text
