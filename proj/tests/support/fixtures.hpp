#pragma once

#include <string>
#include <vector>

#include "lodrec/authority.hpp"
#include "lodrec/embedding.hpp"

namespace fixture {

/// An enriched video whose i-th tag resolves to the i-th list of DDC notations.
inline lodrec::EnrichedVideo enriched(const std::string& id,
                                      const std::vector<std::vector<std::string>>& tag_codes) {
  lodrec::EnrichedVideo e;
  e.video.id = id;
  e.video.language = "de";
  e.video.title = id;
  for (std::size_t i = 0; i < tag_codes.size(); ++i) {
    e.video.tags.push_back(lodrec::Tag{"tag" + std::to_string(i), lodrec::Provenance::manual,
                                       "gnd:" + std::to_string(i)});
    lodrec::ResolvedTag r;
    r.tag_index = i;
    r.gnd_id = "gnd:" + std::to_string(i);
    for (const auto& code : tag_codes[i]) r.ddc_codes.push_back(lodrec::parse_code(code));
    e.resolved.push_back(std::move(r));
  }
  return e;
}

inline lodrec::DocVector doc(const std::string& id, std::vector<double> v, std::size_t used = 1) {
  lodrec::DocVector d;
  d.video_id = id;
  d.tokens_used = used;
  d.vector = used == 0 ? std::vector<double>(v.size(), 0.0) : std::move(v);
  return d;
}

}  // namespace fixture
