#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lodrec {

/// Where a tag came from. Manual keywords plus the three automatic content analyses.
enum class Provenance { manual, transcript, ocr, visual };

std::string_view to_string(Provenance p) noexcept;
/// Throws ParseError for anything but the four lowercase names.
Provenance parse_provenance(std::string_view name);

struct Tag {
  std::string surface;
  Provenance provenance = Provenance::manual;
  std::optional<std::string> gnd_id;

  bool operator==(const Tag&) const = default;
};

struct VideoRecord {
  std::string id;
  std::string language;  // ISO 639-1, two lowercase letters
  std::string title;
  std::string abstract;
  std::vector<Tag> tags;

  bool operator==(const VideoRecord&) const = default;
};

/// An ordered, duplicate-free collection of records. Immutable once loaded.
struct Corpus {
  std::vector<VideoRecord> records;
  std::optional<std::string> language_filter;

  bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat { jsonl, ntriples };

std::string_view to_string(CorpusFormat f) noexcept;
CorpusFormat parse_corpus_format(std::string_view name);

struct LoadResult {
  Corpus corpus;
  std::size_t records_read = 0;       // before language filtering
  std::size_t dropped_by_language = 0;
};

bool is_language_code(std::string_view s) noexcept;

/// Checks the record invariants (non-empty id, language code, non-empty trimmed tags).
/// Throws DataError naming the record.
void validate_record(const VideoRecord& record);

/// Validates every record and rejects duplicate ids, then drops records whose
/// language differs from `language_filter`. Record order is preserved.
LoadResult make_corpus(std::vector<VideoRecord> records,
                       const std::optional<std::string>& language_filter);

/// Reads one JSON object per line. Blank lines are skipped.
std::vector<VideoRecord> read_jsonl(std::istream& in, const std::string& source = "<jsonl>");

/// Reads the N-Triples subset described in docs/ntriples.md.
std::vector<VideoRecord> read_ntriples(std::istream& in, const std::string& source = "<ntriples>");

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format,
                       const std::optional<std::string>& language_filter = std::nullopt);

void write_jsonl(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace lodrec
