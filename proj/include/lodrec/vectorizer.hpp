#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lodrec/authority.hpp"
#include "lodrec/ddc.hpp"

namespace lodrec {

/// The corpus-wide set of DDC fragments, one vector dimension each, with
/// document frequencies. Dimensions follow Fragment ordering (level, prefix).
class FragmentVocabulary {
 public:
  FragmentVocabulary() = default;
  /// `fragments` must be strictly increasing; `df` parallel to it with 1 <= df <= n_docs.
  FragmentVocabulary(std::vector<Fragment> fragments, std::vector<std::size_t> df,
                     std::size_t n_docs, FragmentMode mode);

  std::span<const Fragment> fragments() const noexcept { return fragments_; }
  std::size_t size() const noexcept { return fragments_.size(); }
  bool empty() const noexcept { return fragments_.empty(); }
  std::optional<std::size_t> index_of(const Fragment& f) const;
  std::size_t df(std::size_t dim) const { return df_.at(dim); }
  std::size_t n_docs() const noexcept { return n_docs_; }
  FragmentMode mode() const noexcept { return mode_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::vector<Fragment> fragments_;
  std::map<Fragment, std::size_t> index_;
  std::vector<std::size_t> df_;
  std::size_t n_docs_ = 0;
  FragmentMode mode_ = FragmentMode::paper_faithful;
  std::uint64_t fingerprint_ = 0;
};

/// Distinct fragments over every code of every resolved tag. n_docs counts all
/// videos, including those without any code.
FragmentVocabulary build_vocabulary(std::span<const EnrichedVideo> enriched,
                                    FragmentMode mode = FragmentMode::paper_faithful);

/// `level<TAB>prefix` per line, in dimension order.
void write_vocabulary(std::span<const Fragment> fragments, std::ostream& out);
std::string serialize_vocabulary(std::span<const Fragment> fragments);
std::vector<Fragment> read_vocabulary(std::istream& in, const std::string& source = "<vocabulary>");

/// FNV-1a 64 over serialize_vocabulary().
std::uint64_t vocabulary_fingerprint(std::span<const Fragment> fragments);
std::string fingerprint_hex(std::uint64_t fingerprint);

/// Number of (tag, code) pairs in the video whose fragment chain contains `f`.
/// Throws DataError if `f` is not in the vocabulary.
std::size_t term_frequency(const EnrichedVideo& video, const Fragment& f,
                           const FragmentVocabulary& vocab);

/// Unsmoothed ln(n_docs / df). Zero for a fragment present in every document.
double inverse_document_frequency(std::size_t n_docs, std::size_t df);

struct SparseEntry {
  std::uint32_t dim = 0;
  double weight = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

/// A video's tf-idf weights over the vocabulary. Entries are sorted by dimension
/// and every weight is > 0.
struct DdcVector {
  std::string video_id;
  std::uint64_t fingerprint = 0;
  std::vector<SparseEntry> entries;
  std::size_t skipped_fragments = 0;  // fragments absent from the vocabulary

  bool empty() const noexcept { return entries.empty(); }
  bool operator==(const DdcVector&) const = default;
};

DdcVector vectorize(const EnrichedVideo& video, const FragmentVocabulary& vocab);
std::vector<DdcVector> vectorize_all(std::span<const EnrichedVideo> enriched,
                                     const FragmentVocabulary& vocab, unsigned threads = 1);

/// Cosine of two dense vectors, or nullopt when either norm is zero.
/// Throws DimensionMismatchError on unequal lengths.
std::optional<double> cosine(std::span<const double> a, std::span<const double> b);

/// Cosine of two sparse vectors sorted by dimension.
std::optional<double> cosine(std::span<const SparseEntry> a, std::span<const SparseEntry> b);

/// Cosine of two ω vectors; nullopt if either is empty. Throws
/// VocabularyMismatchError if the vectors carry different fingerprints.
std::optional<double> ddc_similarity(const DdcVector& a, const DdcVector& b);

/// Header line `#fingerprint<TAB><16 hex digits>`, then `video_id<TAB>dim:weight,...`.
void write_ddc_vectors(std::span<const DdcVector> vectors, std::uint64_t fingerprint,
                       std::ostream& out);
struct DdcVectorFile {
  std::uint64_t fingerprint = 0;
  std::vector<DdcVector> vectors;
};
DdcVectorFile read_ddc_vectors(std::istream& in, const std::string& source = "<ddc vectors>");

}  // namespace lodrec
