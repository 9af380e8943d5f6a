#include "lodrec/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lodrec/error.hpp"
#include "lodrec/text.hpp"

namespace lodrec {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::manual: return "manual";
    case Provenance::transcript: return "transcript";
    case Provenance::ocr: return "ocr";
    case Provenance::visual: return "visual";
  }
  return "manual";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "manual") return Provenance::manual;
  if (name == "transcript") return Provenance::transcript;
  if (name == "ocr") return Provenance::ocr;
  if (name == "visual") return Provenance::visual;
  throw ParseError("unknown provenance '" + std::string(name) +
                   "' (expected manual, transcript, ocr or visual)");
}

std::string_view to_string(CorpusFormat f) noexcept {
  return f == CorpusFormat::jsonl ? "jsonl" : "ntriples";
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "ntriples" || name == "nt") return CorpusFormat::ntriples;
  throw UsageError("unknown corpus format '" + std::string(name) + "'");
}

bool is_language_code(std::string_view s) noexcept {
  return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

void validate_record(const VideoRecord& record) {
  if (record.id.empty()) throw DataError("record with empty id");
  if (!is_language_code(record.language)) {
    throw DataError("record " + record.id + ": language '" + record.language +
                    "' is not a two-letter lowercase code");
  }
  for (const Tag& tag : record.tags) {
    if (text::trim(tag.surface).empty()) {
      throw DataError("record " + record.id + ": empty tag surface");
    }
  }
}

LoadResult make_corpus(std::vector<VideoRecord> records,
                       const std::optional<std::string>& language_filter) {
  if (language_filter && !is_language_code(*language_filter)) {
    throw UsageError("language filter '" + *language_filter +
                     "' is not a two-letter lowercase code");
  }
  LoadResult result;
  result.records_read = records.size();
  result.corpus.language_filter = language_filter;

  std::unordered_set<std::string> seen;
  for (const VideoRecord& r : records) {
    validate_record(r);
    if (!seen.insert(r.id).second) throw DuplicateIdError(r.id);
  }
  for (VideoRecord& r : records) {
    if (language_filter && r.language != *language_filter) {
      ++result.dropped_by_language;
      continue;
    }
    result.corpus.records.push_back(std::move(r));
  }
  return result;
}

namespace {

std::string require_string(const ordered_json& obj, const char* key, const std::string& source,
                           std::size_t line, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ParseError(source, line, std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_string()) {
    throw ParseError(source, line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

VideoRecord record_from_json(const ordered_json& obj, const std::string& source,
                             std::size_t line) {
  if (!obj.is_object()) throw ParseError(source, line, "expected a JSON object");
  VideoRecord r;
  r.id = require_string(obj, "id", source, line);
  r.language = require_string(obj, "language", source, line);
  r.title = require_string(obj, "title", source, line);
  r.abstract = require_string(obj, "abstract", source, line, false);
  if (r.id.empty()) throw ParseError(source, line, "empty id");
  if (!is_language_code(r.language)) {
    throw ParseError(source, line,
                     "language '" + r.language + "' is not a two-letter lowercase code");
  }

  auto tags = obj.find("tags");
  if (tags == obj.end()) return r;
  if (!tags->is_array()) throw ParseError(source, line, "field 'tags' must be an array");
  for (const auto& t : *tags) {
    if (!t.is_object()) throw ParseError(source, line, "tag must be an object");
    Tag tag;
    tag.surface = text::trim(require_string(t, "surface", source, line));
    if (tag.surface.empty()) throw ParseError(source, line, "empty tag surface");
    try {
      tag.provenance = parse_provenance(require_string(t, "provenance", source, line));
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(source, line, e.what());
    }
    if (t.contains("gnd_id")) tag.gnd_id = require_string(t, "gnd_id", source, line);
    r.tags.push_back(std::move(tag));
  }
  return r;
}

}  // namespace

std::vector<VideoRecord> read_jsonl(std::istream& in, const std::string& source) {
  std::vector<VideoRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    records.push_back(record_from_json(obj, source, lineno));
  }
  return records;
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format,
                       const std::optional<std::string>& language_filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file " + path.string());
  std::vector<VideoRecord> records = format == CorpusFormat::jsonl
                                         ? read_jsonl(in, path.string())
                                         : read_ntriples(in, path.string());
  return make_corpus(std::move(records), language_filter);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const VideoRecord& r : corpus.records) {
    ordered_json obj;
    obj["id"] = r.id;
    obj["language"] = r.language;
    obj["title"] = r.title;
    obj["abstract"] = r.abstract;
    obj["tags"] = ordered_json::array();
    for (const Tag& t : r.tags) {
      ordered_json tag;
      tag["surface"] = t.surface;
      tag["provenance"] = std::string(to_string(t.provenance));
      if (t.gnd_id) tag["gnd_id"] = *t.gnd_id;
      obj["tags"].push_back(std::move(tag));
    }
    out << obj.dump() << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write corpus file " + path.string());
  write_jsonl(corpus, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace lodrec
