// lodrec: ingest -> index -> recommend / matrix, and evaluate over rating files.
//
// Machine-readable results go to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lodrec/error.hpp"
#include "lodrec/pipeline.hpp"

namespace {

struct Overrides {
  std::string config;
  std::vector<std::pair<std::string, std::string>> settings;
};

// Registers the flags shared by every pipeline subcommand. Flag values are
// collected as key/value pairs and applied after the config file, so flags win.
void add_pipeline_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key = value config file");
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        name, [&o, key](const std::string& v) { o.settings.emplace_back(key, v); }, help);
  };
  flag("--corpus", "corpus", "corpus file");
  flag("--format", "corpus_format", "corpus format: jsonl or ntriples");
  flag("--snapshot", "snapshot", "authority snapshot TSV");
  flag("--embeddings", "embeddings", "word vectors in text format");
  flag("--stopwords", "stopwords", "optional stop-word list");
  flag("--index-dir", "index_dir", "directory for ingest and index artifacts");
  flag("--language", "language", "ISO 639-1 language filter");
  flag("--mode", "fragmentation_mode", "paper_faithful or zero_preserving");
  flag("--w-text", "w_text", "weight of the embedding similarity");
  flag("--w-ddc", "w_ddc", "weight of the DDC similarity");
  flag("--k", "k", "number of recommendations");
  flag("--method", "method", "with_lod or without_lod");
  flag("--threads", "threads", "worker threads (default: all processors)");
  flag("--limit-embeddings", "limit_embeddings", "read at most this many embedding rows");
}

lodrec::PipelineConfig resolve_config(const Overrides& o) {
  lodrec::PipelineConfig config =
      o.config.empty() ? lodrec::PipelineConfig{} : lodrec::load_config(o.config);
  for (const auto& [key, value] : o.settings) lodrec::apply_setting(config, key, value, {});
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Content-based scientific video recommendation with DDC enrichment"};
  app.require_subcommand(1);

  Overrides ingest_o, index_o, recommend_o, matrix_o;
  std::string query_id, matrix_output, ratings_path;

  auto* ingest = app.add_subcommand("ingest", "load, validate and language-filter the corpus");
  add_pipeline_flags(ingest, ingest_o);

  auto* index = app.add_subcommand("index", "enrich tags and build the similarity index");
  add_pipeline_flags(index, index_o);

  auto* rec = app.add_subcommand("recommend", "top-k similar videos for one video as JSON");
  add_pipeline_flags(rec, recommend_o);
  rec->add_option("query_id", query_id, "id of the query video")->required();

  auto* matrix = app.add_subcommand("matrix", "pairwise similarity matrix as TSV");
  add_pipeline_flags(matrix, matrix_o);
  matrix->add_option("--output", matrix_output, "write to this file instead of stdout");

  auto* evaluate = app.add_subcommand("evaluate", "contingency table, deltas and chi-square");
  evaluate->add_option("ratings", ratings_path, "ratings CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? lodrec::kExitOk : lodrec::kExitUsage;
  }

  return lodrec::guarded(
      [&]() -> int {
        if (*ingest) {
          std::cout << lodrec::run_ingest(resolve_config(ingest_o), std::cerr).dump(2) << '\n';
        } else if (*index) {
          std::cout << lodrec::run_index(resolve_config(index_o), std::cerr).dump(2) << '\n';
        } else if (*rec) {
          std::cout << lodrec::run_recommend(resolve_config(recommend_o), query_id, std::cerr).dump(2)
                    << '\n';
        } else if (*matrix) {
          lodrec::PipelineConfig config = resolve_config(matrix_o);
          if (matrix_output.empty()) {
            lodrec::run_matrix(config, std::cout, std::cerr);
          } else {
            std::ofstream out(matrix_output, std::ios::binary | std::ios::trunc);
            if (!out) throw lodrec::IoError("cannot write " + matrix_output);
            lodrec::run_matrix(config, out, std::cerr);
          }
        } else if (*evaluate) {
          lodrec::EvaluationOutcome outcome = lodrec::run_evaluate(ratings_path, std::cerr);
          std::cout << outcome.report.dump(2) << '\n';
          return outcome.complete ? lodrec::kExitOk : lodrec::kExitData;
        }
        return lodrec::kExitOk;
      },
      std::cerr);
}
