#include "lodrec/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "lodrec/error.hpp"
#include "lodrec/parallel.hpp"

namespace lodrec {

std::string_view to_string(Method m) noexcept {
  return m == Method::with_lod ? "with_lod" : "without_lod";
}

Method parse_method(std::string_view name) {
  if (name == "with_lod") return Method::with_lod;
  if (name == "without_lod") return Method::without_lod;
  throw UsageError("unknown method '" + std::string(name) + "' (expected with_lod or without_lod)");
}

void Weights::validate() const {
  if (!std::isfinite(text) || !std::isfinite(ddc) || text < 0.0 || ddc < 0.0 ||
      !(text + ddc > 0.0)) {
    throw UsageError("weights must be non-negative with a positive sum");
  }
}

CorpusIndex::CorpusIndex(std::vector<DocVector> docs, std::vector<DdcVector> ddc)
    : docs_(std::move(docs)), ddc_(docs_.size()) {
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (!positions_.try_emplace(docs_[i].video_id, i).second) {
      throw DuplicateIdError(docs_[i].video_id);
    }
    if (docs_[i].vector.size() != docs_.front().vector.size()) {
      throw DimensionMismatchError(docs_.front().vector.size(), docs_[i].vector.size());
    }
  }
  for (DdcVector& v : ddc) {
    auto it = positions_.find(v.video_id);
    if (it == positions_.end()) throw UnknownIdError(v.video_id);
    if (fingerprint_ && *fingerprint_ != v.fingerprint) {
      throw VocabularyMismatchError("ω vectors from different vocabularies in one index");
    }
    fingerprint_ = v.fingerprint;
    if (ddc_[it->second]) throw DuplicateIdError(v.video_id);
    ddc_[it->second] = std::move(v);
  }
}

std::optional<std::size_t> CorpusIndex::position(std::string_view id) const {
  auto it = positions_.find(std::string(id));
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

std::size_t CorpusIndex::require(std::string_view id) const {
  if (auto p = position(id)) return *p;
  throw UnknownIdError(std::string(id));
}

const DdcVector* CorpusIndex::ddc(std::size_t i) const {
  const auto& slot = ddc_.at(i);
  return slot ? &*slot : nullptr;
}

SimilarityScore combine(std::optional<double> s_text, std::optional<double> s_ddc,
                        const Weights& weights) {
  SimilarityScore s;
  s.s_text = s_text;
  s.s_ddc = s_ddc;
  if (s_text && s_ddc) {
    s.s_lod = (weights.text * *s_text + weights.ddc * *s_ddc) / (weights.text + weights.ddc);
  } else if (s_text) {
    s.s_lod = s_text;
    s.fallback_applied = true;
  } else if (s_ddc) {
    s.s_lod = s_ddc;
    s.fallback_applied = true;
  }
  return s;
}

SimilarityScore combined_similarity(const CorpusIndex& index, std::size_t i, std::size_t j,
                                    const Weights& weights) {
  std::optional<double> s_text = text_similarity(index.doc(i), index.doc(j));
  std::optional<double> s_ddc;
  const DdcVector* a = index.ddc(i);
  const DdcVector* b = index.ddc(j);
  if (a != nullptr && b != nullptr) s_ddc = ddc_similarity(*a, *b);
  SimilarityScore s = combine(s_text, s_ddc, weights);
  s.first = index.id(i);
  s.second = index.id(j);
  return s;
}

SimilarityScore combined_similarity(const CorpusIndex& index, std::string_view i,
                                    std::string_view j, const Weights& weights) {
  return combined_similarity(index, index.require(i), index.require(j), weights);
}

std::optional<double> pair_score(const CorpusIndex& index, std::size_t i, std::size_t j,
                                 Method method, const Weights& weights) {
  if (method == Method::without_lod) return text_similarity(index.doc(i), index.doc(j));
  return combined_similarity(index, i, j, weights).s_lod;
}

bool ranks_before(const RankedItem& a, const RankedItem& b) {
  if (a.score.has_value() != b.score.has_value()) return a.score.has_value();
  if (a.score && *a.score != *b.score) return *a.score > *b.score;
  return a.id < b.id;
}

Recommendation recommend(const CorpusIndex& index, std::string_view query_id, std::size_t k,
                         Method method, const Weights& weights) {
  weights.validate();
  const std::size_t q = index.require(query_id);
  if (k < 1 || k + 1 > index.size()) {
    throw UsageError("k = " + std::to_string(k) + " outside [1, " +
                     std::to_string(index.size() - 1) + "]");
  }
  std::vector<RankedItem> candidates;
  candidates.reserve(index.size() - 1);
  for (std::size_t j = 0; j < index.size(); ++j) {
    if (j == q) continue;
    candidates.push_back(RankedItem{index.id(j), pair_score(index, q, j, method, weights)});
  }
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end(), ranks_before);
  candidates.resize(k);

  Recommendation rec;
  rec.query_id = std::string(query_id);
  rec.method = method;
  rec.k = k;
  rec.ranked = std::move(candidates);
  return rec;
}

nlohmann::ordered_json to_json(const Recommendation& rec) {
  nlohmann::ordered_json out;
  out["query"] = rec.query_id;
  out["method"] = std::string(to_string(rec.method));
  out["k"] = rec.k;
  out["results"] = nlohmann::ordered_json::array();
  for (const RankedItem& item : rec.ranked) {
    nlohmann::ordered_json r;
    r["id"] = item.id;
    r["score"] = item.score ? nlohmann::ordered_json(*item.score) : nlohmann::ordered_json(nullptr);
    out["results"].push_back(std::move(r));
  }
  return out;
}

SimilarityMatrix similarity_matrix(const CorpusIndex& index, Method method, const Weights& weights,
                                   unsigned threads) {
  weights.validate();
  const std::size_t n = index.size();
  SimilarityMatrix m;
  m.ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) m.ids.push_back(index.id(i));
  m.cells.assign(n * n, std::nullopt);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) m.cells[i * n + j] = pair_score(index, i, j, method, weights);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) m.cells[i * n + j] = m.cells[j * n + i];
  }
  return m;
}

void write_matrix_tsv(const SimilarityMatrix& m, std::ostream& out) {
  std::string line;
  for (const std::string& id : m.ids) {
    line += '\t';
    line += id;
  }
  out << line << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.size(); ++i) {
    line = m.ids[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      line += '\t';
      if (const auto& cell = m.at(i, j)) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *cell);
        line.append(buf, ptr);
      }
    }
    out << line << '\n';
  }
}

}  // namespace lodrec
