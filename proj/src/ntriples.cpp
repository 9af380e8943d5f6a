// Reader for the small N-Triples subset documented in docs/ntriples.md.

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lodrec/corpus.hpp"
#include "lodrec/error.hpp"
#include "lodrec/text.hpp"

namespace lodrec {
namespace {

enum class Field { title, abstract, language, tag };

struct Mapping {
  Field field;
  Provenance provenance = Provenance::manual;
};

const std::map<std::string, Mapping, std::less<>>& predicate_table() {
  static const std::map<std::string, Mapping, std::less<>> table = {
      {"http://purl.org/dc/terms/title", {Field::title}},
      {"http://purl.org/dc/terms/abstract", {Field::abstract}},
      {"http://purl.org/dc/terms/language", {Field::language}},
      {"http://purl.org/dc/terms/subject", {Field::tag, Provenance::manual}},
      {"urn:lodrec:tag:manual", {Field::tag, Provenance::manual}},
      {"urn:lodrec:tag:transcript", {Field::tag, Provenance::transcript}},
      {"urn:lodrec:tag:ocr", {Field::tag, Provenance::ocr}},
      {"urn:lodrec:tag:visual", {Field::tag, Provenance::visual}},
  };
  return table;
}

struct Term {
  enum Kind { iri, blank, literal } kind = iri;
  std::string value;
};

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, const std::string& source, std::size_t lineno)
      : s_(line), source_(source), lineno_(lineno) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  Term term(bool allow_literal) {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of line");
    char c = s_[pos_];
    if (c == '<') return Term{Term::iri, iri()};
    if (c == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') {
      std::size_t start = pos_;
      pos_ += 2;
      while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t') ++pos_;
      return Term{Term::blank, std::string(s_.substr(start, pos_ - start))};
    }
    if (c == '"' && allow_literal) return Term{Term::literal, literal()};
    fail(std::string("unexpected character '") + c + "'");
  }

  void expect_end() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '.') fail("expected '.' at end of triple");
    ++pos_;
    if (!at_end_or_comment()) fail("trailing characters after '.'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(source_, lineno_, message);
  }

 private:
  std::string iri() {
    std::size_t close = s_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated IRI");
    std::string out(s_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return out;
  }

  char32_t hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated unicode escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char h = s_[pos_++];
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= static_cast<char32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') cp |= static_cast<char32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') cp |= static_cast<char32_t>(h - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point in escape");
    return cp;
  }

  std::string literal() {
    ++pos_;  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= s_.size()) fail("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= s_.size()) fail("dangling escape");
      char e = s_[pos_++];
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': append_utf8(out, hex(4)); break;
        case 'U': append_utf8(out, hex(8)); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    // Language tag or datatype; both are accepted and ignored.
    if (pos_ < s_.size() && s_[pos_] == '@') {
      while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.') ++pos_;
    } else if (s_.substr(pos_, 3) == "^^<") {
      pos_ += 2;
      iri();
    }
    return out;
  }

  std::string_view s_;
  const std::string& source_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

struct Pending {
  VideoRecord record;
  std::size_t first_line = 0;
  bool has_title = false;
  bool has_abstract = false;
};

std::string language_from(const Term& t) {
  if (t.kind == Term::literal) return t.value;
  std::size_t cut = t.value.find_last_of("/#");
  return cut == std::string::npos ? t.value : t.value.substr(cut + 1);
}

}  // namespace

std::vector<VideoRecord> read_ntriples(std::istream& in, const std::string& source) {
  std::vector<Pending> pending;
  std::unordered_map<std::string, std::size_t> by_subject;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser p(line, source, lineno);
    if (p.at_end_or_comment()) continue;

    Term subject = p.term(false);
    Term predicate = p.term(false);
    if (predicate.kind != Term::iri) p.fail("predicate must be an IRI");
    Term object = p.term(true);
    p.expect_end();

    auto mapping = predicate_table().find(predicate.value);
    if (mapping == predicate_table().end()) continue;

    auto [slot, inserted] = by_subject.try_emplace(subject.value, pending.size());
    if (inserted) {
      pending.emplace_back();
      pending.back().record.id = subject.value;
      pending.back().first_line = lineno;
    }
    Pending& rec = pending[slot->second];

    switch (mapping->second.field) {
      case Field::title:
        if (object.kind != Term::literal) p.fail("title must be a literal");
        if (rec.has_title) p.fail("second title for " + subject.value);
        rec.record.title = object.value;
        rec.has_title = true;
        break;
      case Field::abstract:
        if (object.kind != Term::literal) p.fail("abstract must be a literal");
        if (rec.has_abstract) p.fail("second abstract for " + subject.value);
        rec.record.abstract = object.value;
        rec.has_abstract = true;
        break;
      case Field::language: {
        std::string lang = language_from(object);
        if (!is_language_code(lang)) {
          p.fail("language '" + lang + "' is not a two-letter lowercase code");
        }
        if (!rec.record.language.empty() && rec.record.language != lang) {
          p.fail("conflicting languages for " + subject.value);
        }
        rec.record.language = lang;
        break;
      }
      case Field::tag: {
        if (object.kind != Term::literal) p.fail("tag must be a literal");
        std::string surface = text::trim(object.value);
        if (surface.empty()) p.fail("empty tag surface");
        rec.record.tags.push_back(Tag{std::move(surface), mapping->second.provenance, std::nullopt});
        break;
      }
    }
  }

  std::vector<VideoRecord> records;
  records.reserve(pending.size());
  for (Pending& rec : pending) {
    if (!rec.has_title) {
      throw ParseError(source, rec.first_line, "record " + rec.record.id + " has no title");
    }
    if (rec.record.language.empty()) {
      throw ParseError(source, rec.first_line, "record " + rec.record.id + " has no language");
    }
    records.push_back(std::move(rec.record));
  }
  return records;
}

}  // namespace lodrec
