#include "lodrec/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lodrec/authority.hpp"
#include "lodrec/embedding.hpp"
#include "lodrec/error.hpp"
#include "lodrec/evaluation.hpp"
#include "lodrec/text.hpp"
#include "lodrec/vectorizer.hpp"

namespace lodrec {
namespace {

template <typename T>
T parse_value(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec == std::errc() && ptr == value.data() + value.size()) return out;
  throw UsageError("invalid value '" + std::string(value) + "' for " + std::string(key));
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(value)};
  if (p.empty() || p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fill) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  fill(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + what + " " + path.string());
  return in;
}

void require_path(const std::filesystem::path& p, const char* key) {
  if (p.empty()) throw UsageError(std::string("no ") + key + " configured");
}

void warn(std::ostream& diagnostics, const std::string& message) {
  diagnostics << "warning: " << message << '\n';
}

}  // namespace

void PipelineConfig::validate() const {
  weights.validate();
  if (k < 1) throw UsageError("k must be at least 1");
  if (language && !is_language_code(*language)) {
    throw UsageError("language '" + *language + "' is not a two-letter lowercase code");
  }
}

void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir) {
  if (key == "corpus") {
    config.corpus_path = resolve(value, base_dir);
  } else if (key == "corpus_format" || key == "format") {
    config.corpus_format = parse_corpus_format(value);
  } else if (key == "snapshot") {
    config.snapshot_path = resolve(value, base_dir);
  } else if (key == "embeddings") {
    config.embeddings_path = resolve(value, base_dir);
  } else if (key == "stopwords") {
    config.stopwords_path = resolve(value, base_dir);
  } else if (key == "index_dir") {
    config.index_dir = resolve(value, base_dir);
  } else if (key == "language") {
    if (value.empty() || value == "any") {
      config.language.reset();
    } else {
      config.language = std::string(value);
    }
  } else if (key == "fragmentation_mode" || key == "mode") {
    config.fragmentation_mode = parse_fragment_mode(value);
  } else if (key == "w_text") {
    config.weights.text = parse_value<double>(key, value);
  } else if (key == "w_ddc") {
    config.weights.ddc = parse_value<double>(key, value);
  } else if (key == "k") {
    config.k = parse_value<std::size_t>(key, value);
  } else if (key == "method") {
    config.method = parse_method(value);
  } else if (key == "threads") {
    config.threads = parse_value<unsigned>(key, value);
  } else if (key == "limit_embeddings") {
    config.limit_embeddings = parse_value<std::size_t>(key, value);
  } else {
    throw UsageError("unknown config key '" + std::string(key) + "'");
  }
}

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                            const std::string& source) {
  PipelineConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw UsageError(source + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = text::trim(std::string_view(trimmed).substr(0, eq));
    std::string value = text::trim(std::string_view(trimmed).substr(eq + 1));
    try {
      apply_setting(config, key, value, base_dir);
    } catch (const UsageError& e) {
      throw UsageError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file " + path.string());
  return parse_config(in, path.parent_path(), path.string());
}

nlohmann::ordered_json run_ingest(const PipelineConfig& config, std::ostream& diagnostics) {
  config.validate();
  require_path(config.corpus_path, "corpus");
  LoadResult loaded = load_corpus(config.corpus_path, config.corpus_format, config.language);

  IndexLayout layout{config.index_dir};
  std::filesystem::create_directories(layout.dir);
  save_corpus(loaded.corpus, layout.corpus());

  if (loaded.corpus.records.empty()) {
    warn(diagnostics, "no records retained" +
                          (config.language ? " for language '" + *config.language + "'" : ""));
  }
  nlohmann::ordered_json summary;
  summary["loaded"] = loaded.records_read;
  summary["retained"] = loaded.corpus.records.size();
  summary["dropped_language"] = loaded.dropped_by_language;
  summary["duplicates"] = 0;
  summary["language"] = config.language ? nlohmann::ordered_json(*config.language)
                                        : nlohmann::ordered_json(nullptr);
  summary["output"] = layout.corpus().string();
  return summary;
}

nlohmann::ordered_json run_index(const PipelineConfig& config, std::ostream& diagnostics) {
  config.validate();
  require_path(config.snapshot_path, "snapshot");
  require_path(config.embeddings_path, "embeddings");
  IndexLayout layout{config.index_dir};
  if (!std::filesystem::exists(layout.corpus())) {
    throw IoError("missing " + layout.corpus().string() + " (run ingest first)");
  }
  Corpus corpus = load_corpus(layout.corpus(), CorpusFormat::jsonl).corpus;
  AuthoritySnapshot snapshot = load_snapshot(config.snapshot_path);
  EmbeddingTable table = load_embeddings(config.embeddings_path, config.limit_embeddings);
  std::optional<StopList> stop_words;
  if (!config.stopwords_path.empty()) stop_words = load_stop_list(config.stopwords_path);

  std::vector<EnrichedVideo> enriched = enrich(corpus, snapshot, config.threads);
  FragmentVocabulary vocab = build_vocabulary(enriched, config.fragmentation_mode);
  std::vector<DdcVector> ddc = vectorize_all(enriched, vocab, config.threads);
  std::vector<DocVector> docs =
      embed_corpus(corpus, table, stop_words ? &*stop_words : nullptr, config.threads);

  write_file(layout.vocabulary(), [&](std::ostream& out) { write_vocabulary(vocab.fragments(), out); });
  write_file(layout.ddc_vectors(),
             [&](std::ostream& out) { write_ddc_vectors(ddc, vocab.fingerprint(), out); });
  write_file(layout.doc_vectors(), [&](std::ostream& out) { write_doc_vectors(docs, out); });

  EnrichmentSummary es = summarize(enriched);
  std::size_t degenerate = 0, tokens_used = 0, tokens_missed = 0;
  for (const DocVector& d : docs) {
    degenerate += d.degenerate() ? 1 : 0;
    tokens_used += d.tokens_used;
    tokens_missed += d.tokens_missed;
  }

  nlohmann::ordered_json manifest;
  manifest["format_version"] = 1;
  manifest["fragmentation_mode"] = std::string(to_string(vocab.mode()));
  manifest["vocabulary_fingerprint"] = fingerprint_hex(vocab.fingerprint());
  manifest["vocabulary_size"] = vocab.size();
  manifest["n_docs"] = vocab.n_docs();
  manifest["embedding_dim"] = table.dim();
  manifest["embedding_rows"] = table.size();
  manifest["videos"] = es.videos;
  manifest["tags"] = es.tags;
  manifest["resolved_tags"] = es.resolved_tags;
  manifest["unresolved_tags"] = es.unresolved_tags;
  manifest["videos_without_ddc"] = es.videos_without_codes;
  manifest["tokens_used"] = tokens_used;
  manifest["tokens_missed"] = tokens_missed;
  manifest["degenerate_videos"] = degenerate;
  write_file(layout.manifest(), [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });

  if (vocab.empty()) warn(diagnostics, "no tag resolved to a DDC code; the vocabulary is empty");
  if (es.unresolved_tags > 0) {
    warn(diagnostics, std::to_string(es.unresolved_tags) + " of " + std::to_string(es.tags) +
                          " tags not found in the authority snapshot");
  }
  if (degenerate > 0) {
    warn(diagnostics, std::to_string(degenerate) + " videos have no in-vocabulary token");
  }
  return manifest;
}

CorpusIndex load_index(const std::filesystem::path& index_dir) {
  IndexLayout layout{index_dir};
  nlohmann::ordered_json manifest;
  {
    std::ifstream in = open_input(layout.manifest(), "index manifest");
    try {
      manifest = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(layout.manifest().string() + ": " + e.what());
    }
  }
  std::ifstream vocab_in = open_input(layout.vocabulary(), "vocabulary");
  std::vector<Fragment> fragments = read_vocabulary(vocab_in, layout.vocabulary().string());
  std::ifstream ddc_in = open_input(layout.ddc_vectors(), "ω vectors");
  DdcVectorFile ddc = read_ddc_vectors(ddc_in, layout.ddc_vectors().string());
  std::ifstream doc_in = open_input(layout.doc_vectors(), "document vectors");
  std::vector<DocVector> docs = read_doc_vectors(doc_in, layout.doc_vectors().string());

  const std::string vocab_fp = fingerprint_hex(vocabulary_fingerprint(fragments));
  const std::string ddc_fp = fingerprint_hex(ddc.fingerprint);
  const std::string manifest_fp = manifest.value("vocabulary_fingerprint", std::string());
  if (vocab_fp != ddc_fp || vocab_fp != manifest_fp) {
    throw VocabularyMismatchError("fingerprint mismatch: vocabulary " + vocab_fp +
                                  ", ω vectors " + ddc_fp + ", manifest " + manifest_fp);
  }
  for (const DdcVector& v : ddc.vectors) {
    for (const SparseEntry& e : v.entries) {
      if (e.dim >= fragments.size()) {
        throw VocabularyMismatchError("ω vector of " + v.video_id + " has dimension " +
                                      std::to_string(e.dim) + " beyond the vocabulary");
      }
    }
  }
  if (manifest.value("videos", std::size_t{0}) != docs.size()) {
    throw DataError("manifest lists " + std::to_string(manifest.value("videos", std::size_t{0})) +
                    " videos but " + layout.doc_vectors().string() + " has " +
                    std::to_string(docs.size()));
  }
  return CorpusIndex(std::move(docs), std::move(ddc.vectors));
}

nlohmann::ordered_json run_recommend(const PipelineConfig& config, std::string_view query_id,
                                     std::ostream& diagnostics) {
  config.validate();
  CorpusIndex index = load_index(config.index_dir);
  if (index.size() < 2) throw DataError("index holds fewer than two videos");
  std::size_t k = config.k;
  if (k > index.size() - 1) {
    warn(diagnostics, "k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(index.size() - 1) + " candidates; clamped");
    k = index.size() - 1;
  }
  return to_json(recommend(index, query_id, k, config.method, config.weights));
}

void run_matrix(const PipelineConfig& config, std::ostream& out, std::ostream& diagnostics) {
  config.validate();
  CorpusIndex index = load_index(config.index_dir);
  if (index.size() == 0) warn(diagnostics, "index is empty");
  write_matrix_tsv(similarity_matrix(index, config.method, config.weights, config.threads), out);
}

EvaluationOutcome run_evaluate(const std::filesystem::path& ratings_path, std::ostream& diagnostics) {
  std::vector<RatingRecord> ratings = load_ratings(ratings_path);
  ContingencyTable table = aggregate(ratings);
  EvaluationOutcome outcome;
  outcome.report = evaluation_report(table);
  outcome.report["ratings"] = ratings.size();
  for (const auto& [level, delta] : outcome.report["relative_deltas"].items()) {
    if (delta.contains("error")) {
      warn(diagnostics, "relative delta for " + level + ": " + delta["error"].get<std::string>());
    }
  }
  if (outcome.report["chi_square"].contains("error")) {
    outcome.complete = false;
    diagnostics << "error: chi-square: " << outcome.report["chi_square"]["error"].get<std::string>()
                << '\n';
  }
  return outcome;
}

int guarded(const std::function<int()>& body, std::ostream& diagnostics) {
  try {
    return body();
  } catch (const UsageError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    diagnostics << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace lodrec
