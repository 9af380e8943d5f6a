#pragma once

#include <string_view>

namespace lodrec {

/// without_lod: mean-embedding cosine only. with_lod: s_LOD, the weighted mean of
/// the embedding cosine and the DDC ω cosine.
enum class Method { without_lod, with_lod };

std::string_view to_string(Method m) noexcept;
/// Throws UsageError for unknown names.
Method parse_method(std::string_view name);

}  // namespace lodrec
