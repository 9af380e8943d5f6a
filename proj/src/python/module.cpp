#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lodrec/authority.hpp"
#include "lodrec/corpus.hpp"
#include "lodrec/ddc.hpp"
#include "lodrec/embedding.hpp"
#include "lodrec/error.hpp"
#include "lodrec/evaluation.hpp"
#include "lodrec/gamma.hpp"
#include "lodrec/similarity.hpp"
#include "lodrec/vectorizer.hpp"

namespace py = pybind11;
using namespace lodrec;

namespace {

void bind_errors(py::module_& m) {
  // Translators run most-recently-registered first, so derived types go last.
  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
}

void bind_corpus(py::module_& m) {
  py::enum_<Provenance>(m, "Provenance")
      .value("manual", Provenance::manual)
      .value("transcript", Provenance::transcript)
      .value("ocr", Provenance::ocr)
      .value("visual", Provenance::visual);
  py::enum_<CorpusFormat>(m, "CorpusFormat")
      .value("jsonl", CorpusFormat::jsonl)
      .value("ntriples", CorpusFormat::ntriples);

  py::class_<Tag>(m, "Tag")
      .def(py::init<>())
      .def(py::init([](std::string surface, Provenance p) {
             return Tag{std::move(surface), p, std::nullopt};
           }),
           py::arg("surface"), py::arg("provenance") = Provenance::manual)
      .def_readwrite("surface", &Tag::surface)
      .def_readwrite("provenance", &Tag::provenance)
      .def_readwrite("gnd_id", &Tag::gnd_id)
      .def(py::self == py::self);
  py::class_<VideoRecord>(m, "VideoRecord")
      .def(py::init<>())
      .def_readwrite("id", &VideoRecord::id)
      .def_readwrite("language", &VideoRecord::language)
      .def_readwrite("title", &VideoRecord::title)
      .def_readwrite("abstract", &VideoRecord::abstract)
      .def_readwrite("tags", &VideoRecord::tags)
      .def(py::self == py::self);
  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_readwrite("records", &Corpus::records)
      .def_readwrite("language_filter", &Corpus::language_filter)
      .def("__len__", [](const Corpus& c) { return c.records.size(); })
      .def(py::self == py::self);
  py::class_<LoadResult>(m, "LoadResult")
      .def_readonly("corpus", &LoadResult::corpus)
      .def_readonly("records_read", &LoadResult::records_read)
      .def_readonly("dropped_by_language", &LoadResult::dropped_by_language);

  m.def("load_corpus", &load_corpus, py::arg("path"), py::arg("format") = CorpusFormat::jsonl,
        py::arg("language_filter") = std::nullopt);
  m.def("save_corpus", &save_corpus, py::arg("corpus"), py::arg("path"));
}

void bind_ddc(py::module_& m) {
  py::enum_<FragmentMode>(m, "FragmentMode")
      .value("paper_faithful", FragmentMode::paper_faithful)
      .value("zero_preserving", FragmentMode::zero_preserving);
  py::class_<DdcCode>(m, "DdcCode")
      .def_readonly("raw", &DdcCode::raw)
      .def_readonly("digits", &DdcCode::digits)
      .def("__repr__", [](const DdcCode& c) { return "DdcCode('" + c.raw + "')"; });
  py::class_<Fragment>(m, "Fragment")
      .def(py::init([](std::string prefix, std::size_t level) { return Fragment{std::move(prefix), level}; }),
           py::arg("prefix"), py::arg("level"))
      .def_readonly("prefix", &Fragment::prefix)
      .def_readonly("level", &Fragment::level)
      .def(py::self == py::self)
      .def("__repr__", [](const Fragment& f) { return to_string(f); });
  m.def("parse_code", &parse_code, py::arg("notation"));
  m.def("fragment", &fragment, py::arg("code"), py::arg("mode") = FragmentMode::paper_faithful);
}

void bind_authority(py::module_& m) {
  py::class_<AuthoritySnapshot>(m, "AuthoritySnapshot")
      .def("__len__", &AuthoritySnapshot::size)
      .def("lookup", [](const AuthoritySnapshot& s, std::string_view surface) -> py::object {
        const AuthorityEntry* e = s.find(surface);
        if (e == nullptr) return py::none();
        return py::make_tuple(e->gnd_id, e->ddc_codes);
      });
  py::class_<ResolvedTag>(m, "ResolvedTag")
      .def_readonly("tag_index", &ResolvedTag::tag_index)
      .def_readonly("gnd_id", &ResolvedTag::gnd_id)
      .def_readonly("ddc_codes", &ResolvedTag::ddc_codes);
  py::class_<EnrichedVideo>(m, "EnrichedVideo")
      .def_readonly("video", &EnrichedVideo::video)
      .def_readonly("resolved", &EnrichedVideo::resolved)
      .def_readonly("unresolved_count", &EnrichedVideo::unresolved_count);

  m.def("load_snapshot", &load_snapshot, py::arg("path"));
  m.def("snapshot_from_tsv", [](const std::string& text) {
    std::istringstream in(text);
    return read_snapshot(in);
  });
  m.def("enrich", &enrich, py::arg("corpus"), py::arg("snapshot"), py::arg("threads") = 1);
}

void bind_vectorizer(py::module_& m) {
  py::class_<FragmentVocabulary>(m, "FragmentVocabulary")
      .def("__len__", &FragmentVocabulary::size)
      .def_property_readonly("fragments", [](const FragmentVocabulary& v) {
        return std::vector<Fragment>(v.fragments().begin(), v.fragments().end());
      })
      .def("index_of", &FragmentVocabulary::index_of)
      .def("df", &FragmentVocabulary::df)
      .def_property_readonly("n_docs", &FragmentVocabulary::n_docs)
      .def_property_readonly("fingerprint", &FragmentVocabulary::fingerprint);
  py::class_<DdcVector>(m, "DdcVector")
      .def_readonly("video_id", &DdcVector::video_id)
      .def_readonly("fingerprint", &DdcVector::fingerprint)
      .def_property_readonly("weights", [](const DdcVector& v) {
        py::dict d;
        for (const SparseEntry& e : v.entries) d[py::int_(e.dim)] = e.weight;
        return d;
      });

  m.def("build_vocabulary", [](const std::vector<EnrichedVideo>& e, FragmentMode mode) {
    return build_vocabulary(e, mode);
  }, py::arg("enriched"), py::arg("mode") = FragmentMode::paper_faithful);
  m.def("term_frequency", &term_frequency, py::arg("video"), py::arg("fragment"), py::arg("vocabulary"));
  m.def("vectorize", &vectorize, py::arg("video"), py::arg("vocabulary"));
  m.def("ddc_similarity", &ddc_similarity);
  m.def("cosine", [](const std::vector<double>& a, const std::vector<double>& b) {
    return cosine(std::span<const double>(a), std::span<const double>(b));
  });
}

void bind_embedding(py::module_& m) {
  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def("__len__", &EmbeddingTable::size)
      .def_property_readonly("dim", &EmbeddingTable::dim)
      .def("get", [](const EmbeddingTable& t, std::string_view token) -> std::optional<std::vector<float>> {
        auto row = t.find(token);
        if (!row) return std::nullopt;
        return std::vector<float>(row->begin(), row->end());
      });
  py::class_<DocVector>(m, "DocVector")
      .def_readonly("video_id", &DocVector::video_id)
      .def_readonly("vector", &DocVector::vector)
      .def_readonly("tokens_used", &DocVector::tokens_used)
      .def_readonly("tokens_missed", &DocVector::tokens_missed)
      .def_property_readonly("degenerate", &DocVector::degenerate);

  m.def("load_embeddings", &load_embeddings, py::arg("path"), py::arg("limit") = std::nullopt);
  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("embed_video", [](const VideoRecord& v, const EmbeddingTable& t) { return embed_video(v, t); });
  m.def("text_similarity", &text_similarity);
}

void bind_similarity(py::module_& m) {
  py::enum_<Method>(m, "Method")
      .value("without_lod", Method::without_lod)
      .value("with_lod", Method::with_lod);
  py::class_<Weights>(m, "Weights")
      .def(py::init<double, double>(), py::arg("text") = 0.5, py::arg("ddc") = 0.5)
      .def_readwrite("text", &Weights::text)
      .def_readwrite("ddc", &Weights::ddc);
  py::class_<SimilarityScore>(m, "SimilarityScore")
      .def_readonly("first", &SimilarityScore::first)
      .def_readonly("second", &SimilarityScore::second)
      .def_readonly("s_text", &SimilarityScore::s_text)
      .def_readonly("s_ddc", &SimilarityScore::s_ddc)
      .def_readonly("s_lod", &SimilarityScore::s_lod)
      .def_readonly("fallback_applied", &SimilarityScore::fallback_applied);
  py::class_<CorpusIndex>(m, "CorpusIndex")
      .def(py::init<std::vector<DocVector>, std::vector<DdcVector>>(), py::arg("docs"), py::arg("ddc"))
      .def("__len__", &CorpusIndex::size)
      .def_property_readonly("ids", [](const CorpusIndex& idx) {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < idx.size(); ++i) ids.push_back(idx.id(i));
        return ids;
      });
  py::class_<RankedItem>(m, "RankedItem")
      .def_readonly("id", &RankedItem::id)
      .def_readonly("score", &RankedItem::score);
  py::class_<Recommendation>(m, "Recommendation")
      .def_readonly("query_id", &Recommendation::query_id)
      .def_readonly("method", &Recommendation::method)
      .def_readonly("k", &Recommendation::k)
      .def_readonly("ranked", &Recommendation::ranked)
      .def("to_json", [](const Recommendation& r) { return to_json(r).dump(); });

  m.def("combined_similarity",
        [](const CorpusIndex& idx, std::string_view a, std::string_view b, const Weights& w) {
          return combined_similarity(idx, a, b, w);
        },
        py::arg("index"), py::arg("first"), py::arg("second"), py::arg("weights") = Weights{});
  m.def("recommend", &recommend, py::arg("index"), py::arg("query_id"), py::arg("k"),
        py::arg("method") = Method::with_lod, py::arg("weights") = Weights{});
  m.def("similarity_matrix",
        [](const CorpusIndex& idx, Method method, const Weights& w, unsigned threads) {
          SimilarityMatrix sm = similarity_matrix(idx, method, w, threads);
          std::vector<std::vector<std::optional<double>>> rows(sm.size());
          for (std::size_t i = 0; i < sm.size(); ++i) {
            for (std::size_t j = 0; j < sm.size(); ++j) rows[i].push_back(sm.at(i, j));
          }
          return py::make_tuple(sm.ids, rows);
        },
        py::arg("index"), py::arg("method") = Method::with_lod, py::arg("weights") = Weights{},
        py::arg("threads") = 1);
}

void bind_evaluation(py::module_& m) {
  py::class_<RatingRecord>(m, "RatingRecord")
      .def(py::init([](std::string participant, std::string query, std::string recommended,
                       Method method, int rating) {
             return RatingRecord{std::move(participant), std::move(query), std::move(recommended),
                                 method, rating};
           }),
           py::arg("participant"), py::arg("query_id"), py::arg("recommended_id"),
           py::arg("method"), py::arg("rating"))
      .def_readonly("participant", &RatingRecord::participant)
      .def_readonly("method", &RatingRecord::method)
      .def_readonly("rating", &RatingRecord::rating);
  py::class_<ContingencyTable>(m, "ContingencyTable")
      .def_readonly("counts", &ContingencyTable::counts);
  py::class_<ChiSquareResult>(m, "ChiSquareResult")
      .def_readonly("statistic", &ChiSquareResult::statistic)
      .def_readonly("df", &ChiSquareResult::df)
      .def_readonly("p_value", &ChiSquareResult::p_value);

  m.def("load_ratings", &load_ratings, py::arg("path"));
  m.def("aggregate", [](const std::vector<RatingRecord>& r) { return aggregate(r); });
  m.def("relative_deltas", [](const ContingencyTable& t) {
    py::dict out;
    for (const LevelDelta& d : relative_deltas(t)) {
      out[py::str(std::string(to_string(d.level)))] =
          d.percent ? py::object(py::float_(*d.percent)) : py::object(py::none());
    }
    return out;
  });
  m.def("chi_square", &chi_square, py::arg("table"));
  m.def("pearson_chi_square", &pearson_chi_square, py::arg("observed"));
  m.def("evaluation_report", [](const ContingencyTable& t) { return evaluation_report(t).dump(); });
  m.def("regularized_gamma_q", &regularized_gamma_q, py::arg("a"), py::arg("x"));
  m.def("chi_square_upper_tail", &chi_square_upper_tail, py::arg("statistic"), py::arg("df"));
}

}  // namespace

PYBIND11_MODULE(_lodrec, m) {
  m.doc() = "Scientific video similarity with DDC enrichment";
  bind_errors(m);
  bind_corpus(m);
  bind_ddc(m);
  bind_authority(m);
  bind_vectorizer(m);
  bind_embedding(m);
  bind_similarity(m);
  bind_evaluation(m);
}
