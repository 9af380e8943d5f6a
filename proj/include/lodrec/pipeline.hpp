#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lodrec/corpus.hpp"
#include "lodrec/ddc.hpp"
#include "lodrec/method.hpp"
#include "lodrec/similarity.hpp"

namespace lodrec {

/// Settings for one pipeline run. Read from a `key = value` file, then
/// overridden by command-line flags.
struct PipelineConfig {
  std::filesystem::path corpus_path;
  CorpusFormat corpus_format = CorpusFormat::jsonl;
  std::filesystem::path snapshot_path;
  std::filesystem::path embeddings_path;
  std::filesystem::path stopwords_path;  // empty: no stop list
  std::filesystem::path index_dir = "lodrec-index";
  std::optional<std::string> language;
  FragmentMode fragmentation_mode = FragmentMode::paper_faithful;
  Weights weights;
  std::size_t k = 10;
  Method method = Method::with_lod;
  unsigned threads = 0;  // 0: one per hardware thread
  std::optional<std::size_t> limit_embeddings;

  /// Throws UsageError if weights, k or language are invalid.
  void validate() const;
};

/// Applies one setting. Relative paths are resolved against `base_dir`.
/// Throws UsageError for unknown keys or malformed values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir);

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                            const std::string& source = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

/// File names inside the index directory.
struct IndexLayout {
  std::filesystem::path dir;

  std::filesystem::path corpus() const { return dir / "corpus.jsonl"; }
  std::filesystem::path vocabulary() const { return dir / "vocabulary.tsv"; }
  std::filesystem::path ddc_vectors() const { return dir / "ddc_vectors.tsv"; }
  std::filesystem::path doc_vectors() const { return dir / "doc_vectors.tsv"; }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
};

/// Loads and language-filters the corpus, writes the normalized copy into the
/// index directory and returns `{loaded, retained, dropped_language, duplicates}`.
nlohmann::ordered_json run_ingest(const PipelineConfig& config, std::ostream& diagnostics);

/// Enriches the ingested corpus, builds the vocabulary, ω vectors and mean word
/// vectors, and writes them with a manifest. Output is byte-identical across runs.
nlohmann::ordered_json run_index(const PipelineConfig& config, std::ostream& diagnostics);

/// Loads the serialized index, checking that every artifact carries the same
/// vocabulary fingerprint. Throws VocabularyMismatchError otherwise.
CorpusIndex load_index(const std::filesystem::path& index_dir);

/// k larger than corpus size - 1 is clamped with a warning.
nlohmann::ordered_json run_recommend(const PipelineConfig& config, std::string_view query_id,
                                     std::ostream& diagnostics);

void run_matrix(const PipelineConfig& config, std::ostream& out, std::ostream& diagnostics);

struct EvaluationOutcome {
  nlohmann::ordered_json report;
  bool complete = true;  // false if the chi-square test could not be computed
};

EvaluationOutcome run_evaluate(const std::filesystem::path& ratings_path, std::ostream& diagnostics);

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

/// Runs `body`, printing any exception to `diagnostics` and mapping it to an exit code:
/// UsageError -> 1; ParseError, DataError, IoError -> 2; anything else -> 3.
int guarded(const std::function<int()>& body, std::ostream& diagnostics);

}  // namespace lodrec
