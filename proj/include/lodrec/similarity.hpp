#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "lodrec/embedding.hpp"
#include "lodrec/method.hpp"
#include "lodrec/vectorizer.hpp"

namespace lodrec {

struct Weights {
  double text = 0.5;
  double ddc = 0.5;

  /// Throws UsageError unless both are finite, non-negative and sum to > 0.
  void validate() const;
};

struct SimilarityScore {
  std::string first;
  std::string second;
  std::optional<double> s_text;
  std::optional<double> s_ddc;
  std::optional<double> s_lod;
  bool fallback_applied = false;
};

/// Read-only lookup structure over the per-video vectors of one corpus.
/// Every video needs a DocVector; ω vectors are optional per video.
class CorpusIndex {
 public:
  CorpusIndex() = default;
  /// Throws DuplicateIdError, UnknownIdError (ω vector for a video without a
  /// DocVector), VocabularyMismatchError (mixed fingerprints) or
  /// DimensionMismatchError (mixed embedding dimensions).
  CorpusIndex(std::vector<DocVector> docs, std::vector<DdcVector> ddc);

  std::size_t size() const noexcept { return docs_.size(); }
  const std::string& id(std::size_t i) const { return docs_.at(i).video_id; }
  std::optional<std::size_t> position(std::string_view id) const;
  /// Throws UnknownIdError.
  std::size_t require(std::string_view id) const;

  const DocVector& doc(std::size_t i) const { return docs_.at(i); }
  /// nullptr when the video has no ω vector.
  const DdcVector* ddc(std::size_t i) const;
  std::optional<std::uint64_t> fingerprint() const noexcept { return fingerprint_; }

 private:
  std::vector<DocVector> docs_;
  std::vector<std::optional<DdcVector>> ddc_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::optional<std::uint64_t> fingerprint_;
};

/// Combines the branches. When both are defined s_lod is their weighted mean
/// (the plain average under default weights). When one is undefined s_lod falls
/// back to the other; when both are, s_lod is undefined.
SimilarityScore combine(std::optional<double> s_text, std::optional<double> s_ddc,
                        const Weights& weights = {});

SimilarityScore combined_similarity(const CorpusIndex& index, std::size_t i, std::size_t j,
                                    const Weights& weights = {});
SimilarityScore combined_similarity(const CorpusIndex& index, std::string_view i,
                                    std::string_view j, const Weights& weights = {});

/// Score of a pair under one method: s_text for without_lod, s_lod for with_lod.
std::optional<double> pair_score(const CorpusIndex& index, std::size_t i, std::size_t j,
                                 Method method, const Weights& weights = {});

struct RankedItem {
  std::string id;
  std::optional<double> score;

  bool operator==(const RankedItem&) const = default;
};

struct Recommendation {
  std::string query_id;
  Method method = Method::with_lod;
  std::size_t k = 0;
  std::vector<RankedItem> ranked;
};

/// Ranking key: defined scores descending, undefined after all defined ones,
/// then id ascending. Returns true if `a` ranks before `b`.
bool ranks_before(const RankedItem& a, const RankedItem& b);

/// Exhaustive top-k over every other video. Throws UnknownIdError, or UsageError
/// unless 1 <= k <= size()-1.
Recommendation recommend(const CorpusIndex& index, std::string_view query_id, std::size_t k,
                         Method method, const Weights& weights = {});

/// `{query, method, k, results: [{id, score}]}`; undefined scores are null.
nlohmann::ordered_json to_json(const Recommendation& rec);

struct SimilarityMatrix {
  std::vector<std::string> ids;
  std::vector<std::optional<double>> cells;  // row-major, ids.size()^2

  std::size_t size() const noexcept { return ids.size(); }
  const std::optional<double>& at(std::size_t i, std::size_t j) const {
    return cells.at(i * ids.size() + j);
  }
};

/// All pairwise scores. The upper triangle is computed by row in parallel and mirrored.
SimilarityMatrix similarity_matrix(const CorpusIndex& index, Method method,
                                   const Weights& weights = {}, unsigned threads = 1);

/// Header row and column of ids; undefined cells are empty strings.
void write_matrix_tsv(const SimilarityMatrix& m, std::ostream& out);

}  // namespace lodrec
