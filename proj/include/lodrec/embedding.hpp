#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lodrec/corpus.hpp"

namespace lodrec {

/// Pre-trained word vectors, keyed by case-folded NFC token. Row storage is one
/// contiguous float buffer.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  /// Adds a row under text::fold_case(token). Returns false (and stores nothing)
  /// if the folded token is already present. Throws on arity or non-finite values.
  bool add(std::string_view token, std::span<const float> values);

  /// `token` must already be in lookup form (see tokenize()).
  std::optional<std::span<const float>> find(std::string_view token) const;

  std::span<const std::string> tokens() const noexcept { return tokens_; }
  std::span<const float> row(std::size_t i) const {
    return std::span<const float>(data_).subspan(i * dim_, dim_);
  }

 private:
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
};

/// Text vector format: optional `<count> <dim>` header, then `token v1 ... v_dim`
/// per line. At most `limit` rows are read.
EmbeddingTable read_embeddings(std::istream& in, std::optional<std::size_t> limit = std::nullopt,
                               const std::string& source = "<embeddings>");
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               std::optional<std::size_t> limit = std::nullopt);

/// Writes the header and every row with enough digits to reload each float exactly.
void write_embeddings(const EmbeddingTable& table, std::ostream& out);

/// Splits on anything that is not a letter, digit or combining mark, case-folds,
/// and keeps tokens of at least two code points that are not purely numeric.
std::vector<std::string> tokenize(std::string_view text);

using StopList = std::unordered_set<std::string>;

/// One word per line, folded like tokens. Blank and `#` lines are skipped.
StopList load_stop_list(const std::filesystem::path& path);

/// Mean word vector of one video.
struct DocVector {
  std::string video_id;
  std::vector<double> vector;
  std::size_t tokens_used = 0;
  std::size_t tokens_missed = 0;

  /// No token was found in the table; the vector is all zeros.
  bool degenerate() const noexcept { return tokens_used == 0; }
  bool operator==(const DocVector&) const = default;
};

/// Title, tag surfaces and abstract, concatenated in that order.
std::vector<std::string> video_tokens(const VideoRecord& video);

/// Arithmetic mean over token occurrences found in the table. Stop words are
/// removed before lookup and count neither as used nor as missed.
DocVector embed_video(const VideoRecord& video, const EmbeddingTable& table,
                      const StopList* stop_words = nullptr);
std::vector<DocVector> embed_corpus(const Corpus& corpus, const EmbeddingTable& table,
                                    const StopList* stop_words = nullptr, unsigned threads = 1);

/// Cosine of the two mean vectors; nullopt if either is degenerate.
std::optional<double> text_similarity(const DocVector& a, const DocVector& b);

/// `video_id<TAB>tokens_used<TAB>tokens_missed<TAB>v1,...,v_dim` per line.
void write_doc_vectors(std::span<const DocVector> vectors, std::ostream& out);
std::vector<DocVector> read_doc_vectors(std::istream& in, const std::string& source = "<doc vectors>");

}  // namespace lodrec
