#include "lodrec/authority.hpp"

#include <fstream>
#include <istream>
#include <set>

#include "lodrec/error.hpp"
#include "lodrec/parallel.hpp"
#include "lodrec/text.hpp"

namespace lodrec {

void AuthoritySnapshot::add(AuthorityEntry entry) {
  std::string key = text::normalize_key(entry.surface);
  if (key.empty()) throw DataError("authority entry with empty surface");
  auto [it, inserted] = entries_.try_emplace(std::move(key), std::move(entry));
  if (!inserted) {
    throw DataError("duplicate normalized authority key '" + it->first + "'");
  }
}

const AuthorityEntry* AuthoritySnapshot::find(std::string_view surface) const {
  auto it = entries_.find(text::normalize_key(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t cut = s.find(sep, start);
    if (cut == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, cut - start));
    start = cut + 1;
  }
}

}  // namespace

AuthoritySnapshot read_snapshot(std::istream& in, const std::string& source) {
  AuthoritySnapshot snapshot;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (text::trim(line).empty()) continue;

    auto cols = split(line, '\t');
    if (cols.size() != 3) {
      throw ParseError(source, lineno,
                       "expected 3 tab-separated columns, found " + std::to_string(cols.size()));
    }
    AuthorityEntry entry;
    entry.surface = text::trim(cols[0]);
    entry.gnd_id = text::trim(cols[1]);
    if (entry.surface.empty()) throw ParseError(source, lineno, "empty surface");
    if (entry.gnd_id.empty()) throw ParseError(source, lineno, "empty GND id");
    for (std::string_view piece : split(cols[2], ';')) {
      if (text::trim(piece).empty()) continue;
      try {
        entry.ddc_codes.push_back(parse_code(piece));
      } catch (const ParseError& e) {
        throw ParseError(source, lineno, e.what());
      }
    }
    try {
      snapshot.add(std::move(entry));
    } catch (const DataError& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return snapshot;
}

AuthoritySnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open authority snapshot " + path.string());
  return read_snapshot(in, path.string());
}

EnrichedVideo enrich_video(const VideoRecord& video, const AuthoritySnapshot& snapshot) {
  EnrichedVideo out;
  out.video = video;
  for (std::size_t i = 0; i < video.tags.size(); ++i) {
    const AuthorityEntry* entry = snapshot.find(video.tags[i].surface);
    if (entry == nullptr) {
      ++out.unresolved_count;
      continue;
    }
    out.video.tags[i].gnd_id = entry->gnd_id;
    out.resolved.push_back(ResolvedTag{i, entry->gnd_id, entry->ddc_codes});
  }
  return out;
}

std::vector<EnrichedVideo> enrich(const Corpus& corpus, const AuthoritySnapshot& snapshot,
                                  unsigned threads) {
  std::vector<EnrichedVideo> out(corpus.records.size());
  parallel_for(out.size(), threads,
               [&](std::size_t i) { out[i] = enrich_video(corpus.records[i], snapshot); });
  return out;
}

EnrichmentSummary summarize(std::span<const EnrichedVideo> enriched) {
  EnrichmentSummary s;
  s.videos = enriched.size();
  for (const EnrichedVideo& e : enriched) {
    s.tags += e.video.tags.size();
    std::set<std::size_t> distinct;
    bool any_code = false;
    for (const ResolvedTag& r : e.resolved) {
      distinct.insert(r.tag_index);
      any_code = any_code || !r.ddc_codes.empty();
    }
    s.resolved_tags += distinct.size();
    s.unresolved_tags += e.unresolved_count;
    if (!any_code) ++s.videos_without_codes;
  }
  return s;
}

}  // namespace lodrec
