#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lodrec/corpus.hpp"
#include "lodrec/ddc.hpp"

namespace lodrec {

struct AuthorityEntry {
  std::string surface;  // as written in the snapshot
  std::string gnd_id;
  std::vector<DdcCode> ddc_codes;
};

/// Offline tag -> GND -> DDC lookup table. Keys are text::normalize_key() of the surface.
class AuthoritySnapshot {
 public:
  /// Throws DataError if the normalized key already exists.
  void add(AuthorityEntry entry);

  const AuthorityEntry* find(std::string_view surface) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::unordered_map<std::string, AuthorityEntry> entries_;
};

/// TSV rows `surface<TAB>gnd_id<TAB>code1;code2;...`; `#` comment lines and blank
/// lines are skipped. The code column may be empty.
AuthoritySnapshot read_snapshot(std::istream& in, const std::string& source = "<snapshot>");
AuthoritySnapshot load_snapshot(const std::filesystem::path& path);

struct ResolvedTag {
  std::size_t tag_index = 0;
  std::string gnd_id;
  std::vector<DdcCode> ddc_codes;

  bool operator==(const ResolvedTag&) const = default;
};

/// A record with its authority links. `video` is a copy whose resolved tags carry gnd_id.
struct EnrichedVideo {
  VideoRecord video;
  std::vector<ResolvedTag> resolved;
  std::size_t unresolved_count = 0;

  bool operator==(const EnrichedVideo&) const = default;
};

EnrichedVideo enrich_video(const VideoRecord& video, const AuthoritySnapshot& snapshot);

/// One EnrichedVideo per record, in corpus order. Lookup misses are counted, never errors.
std::vector<EnrichedVideo> enrich(const Corpus& corpus, const AuthoritySnapshot& snapshot,
                                  unsigned threads = 1);

struct EnrichmentSummary {
  std::size_t videos = 0;
  std::size_t tags = 0;
  std::size_t resolved_tags = 0;
  std::size_t unresolved_tags = 0;
  std::size_t videos_without_codes = 0;
};

EnrichmentSummary summarize(std::span<const EnrichedVideo> enriched);

}  // namespace lodrec
