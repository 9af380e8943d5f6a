#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "lodrec/corpus.hpp"
#include "lodrec/error.hpp"

namespace fs = std::filesystem;
using namespace lodrec;

namespace {

const char* kThreeRecords =
    R"({"id":"a","language":"de","title":"Datenbanken","abstract":"SQL","tags":[{"surface":" SPARQL ","provenance":"manual"}]})"
    "\n"
    R"({"id":"b","language":"en","title":"Databases","abstract":"","tags":[]})"
    "\n"
    R"({"id":"c","language":"de","title":"Universität","abstract":"Grüße aus Hannover","tags":[{"surface":"Zellbiologie","provenance":"ocr"},{"surface":"Mitose","provenance":"visual"}]})"
    "\n";

fs::path temp_path(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "lodrec_test_corpus";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("jsonl records parse with trimmed, case-preserved tags", "[corpus]") {
  std::istringstream in(kThreeRecords);
  auto records = read_jsonl(in);
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "a");
  CHECK(records[0].tags.at(0).surface == "SPARQL");
  CHECK(records[0].tags.at(0).provenance == Provenance::manual);
  CHECK(records[2].tags.at(1).provenance == Provenance::visual);
  CHECK(records[1].tags.empty());
}

TEST_CASE("language filter drops other languages and reports the count", "[corpus]") {
  std::istringstream in(kThreeRecords);
  LoadResult r = make_corpus(read_jsonl(in), std::string("de"));
  CHECK(r.records_read == 3);
  CHECK(r.dropped_by_language == 1);
  REQUIRE(r.corpus.records.size() == 2);
  CHECK(r.corpus.records[0].id == "a");
  CHECK(r.corpus.records[1].id == "c");
  CHECK(r.corpus.language_filter == std::optional<std::string>("de"));

  // Filtering again drops nothing.
  LoadResult again = make_corpus(r.corpus.records, std::string("de"));
  CHECK(again.dropped_by_language == 0);
  CHECK(again.corpus == r.corpus);
}

TEST_CASE("empty corpus file loads to zero records", "[corpus]") {
  fs::path p = temp_path("empty.jsonl");
  write_text(p, "");
  LoadResult r = load_corpus(p, CorpusFormat::jsonl, std::string("de"));
  CHECK(r.corpus.records.empty());
  CHECK(r.records_read == 0);
}

TEST_CASE("jsonl errors carry line numbers", "[corpus]") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_jsonl(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  std::string good = R"({"id":"a","language":"de","title":"t","abstract":"","tags":[]})";
  CHECK(line_of(good + "\n{not json\n") == 2);
  CHECK(line_of(good + "\n\n" + R"({"id":"b","language":"de","title":"t","tags":[{"surface":"x","provenance":"radio"}]})") == 3);
  CHECK(line_of(R"({"id":"a","language":"DE","title":"t"})") == 1);
  CHECK(line_of(R"({"id":"","language":"de","title":"t"})") == 1);
  CHECK(line_of(R"({"id":"a","language":"de"})") == 1);
  CHECK(line_of(R"({"id":"a","language":"de","title":"t","tags":[{"surface":"   ","provenance":"ocr"}]})") == 1);
}

TEST_CASE("unknown provenance names are rejected", "[corpus]") {
  CHECK_THROWS_AS(parse_provenance("asr"), ParseError);
  CHECK_THROWS_WITH(parse_provenance("Manual"), Catch::Matchers::ContainsSubstring("Manual"));
}

TEST_CASE("duplicate ids are a hard error naming the id", "[corpus]") {
  std::istringstream in(std::string(kThreeRecords) +
                        R"({"id":"b","language":"en","title":"again","tags":[]})" + "\n");
  try {
    make_corpus(read_jsonl(in), std::nullopt);
    FAIL("expected DuplicateIdError");
  } catch (const DuplicateIdError& e) {
    CHECK(e.id() == "b");
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("save then load is the identity and keeps UTF-8 bytes", "[corpus]") {
  std::istringstream in(kThreeRecords);
  Corpus c = make_corpus(read_jsonl(in), std::nullopt).corpus;
  c.records[2].tags[0].gnd_id = "gnd:4070177-3";

  fs::path p = temp_path("roundtrip.jsonl");
  save_corpus(c, p);
  Corpus back = load_corpus(p, CorpusFormat::jsonl).corpus;
  CHECK(back == c);

  std::string bytes = read_text(p);
  CHECK(bytes.find("Universität") != std::string::npos);
  CHECK(bytes.find("Grüße") != std::string::npos);

  // Saving the reloaded corpus reproduces the file byte for byte.
  fs::path p2 = temp_path("roundtrip2.jsonl");
  save_corpus(back, p2);
  CHECK(read_text(p2) == bytes);
}

TEST_CASE("empty corpus saves to a valid empty file", "[corpus]") {
  fs::path p = temp_path("empty_saved.jsonl");
  save_corpus(Corpus{}, p);
  CHECK(fs::file_size(p) == 0);
  CHECK(load_corpus(p, CorpusFormat::jsonl).corpus.records.empty());
}

TEST_CASE("missing corpus file raises IoError with the path", "[corpus]") {
  CHECK_THROWS_WITH(load_corpus("/nonexistent/corpus.jsonl", CorpusFormat::jsonl),
                    Catch::Matchers::ContainsSubstring("/nonexistent/corpus.jsonl"));
}

TEST_CASE("ntriples subset maps known predicates and skips the rest", "[corpus][ntriples]") {
  std::istringstream in(
      "# comment\n"
      "<https://av.tib.eu/media/1> <http://purl.org/dc/terms/title> \"Einf\\u00FChrung in SPARQL\"@de .\n"
      "<https://av.tib.eu/media/1> <http://purl.org/dc/terms/language> <http://id.loc.gov/vocabulary/iso639-1/de> .\n"
      "<https://av.tib.eu/media/1> <http://purl.org/dc/terms/creator> \"Someone\" .\n"
      "<https://av.tib.eu/media/1> <urn:lodrec:tag:transcript> \"Datenbank\" .\n"
      "<https://av.tib.eu/media/1> <http://purl.org/dc/terms/subject> \" SPARQL \" .\n"
      "<https://av.tib.eu/media/2> <http://purl.org/dc/terms/title> \"Zelle \\\"live\\\"\" .\n"
      "<https://av.tib.eu/media/2> <http://purl.org/dc/terms/abstract> \"Zeile1\\nZeile2\"^^<http://www.w3.org/2001/XMLSchema#string> .\n"
      "<https://av.tib.eu/media/2> <http://purl.org/dc/terms/language> \"de\" .\n"
      "<https://av.tib.eu/media/2> <urn:lodrec:tag:visual> \"Mikroskop\" . # trailing comment\n"
      "<https://example.org/other> <http://xmlns.com/foaf/0.1/name> \"ignored\" .\n");
  auto records = read_ntriples(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "https://av.tib.eu/media/1");
  CHECK(records[0].title == "Einführung in SPARQL");
  CHECK(records[0].language == "de");
  REQUIRE(records[0].tags.size() == 2);
  CHECK(records[0].tags[0] == Tag{"Datenbank", Provenance::transcript, std::nullopt});
  CHECK(records[0].tags[1] == Tag{"SPARQL", Provenance::manual, std::nullopt});
  CHECK(records[1].title == "Zelle \"live\"");
  CHECK(records[1].abstract == "Zeile1\nZeile2");
  CHECK(records[1].tags.at(0).provenance == Provenance::visual);
}

TEST_CASE("ntriples errors carry line numbers", "[corpus][ntriples]") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_ntriples(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("<s> <http://purl.org/dc/terms/title> \"unterminated .\n") == 1);
  CHECK(line_of("\n<s> <http://purl.org/dc/terms/title> \"t\"\n") == 2);
  CHECK(line_of("<s> <http://purl.org/dc/terms/title> \"t\" .\n") == 1);  // no language
  CHECK(line_of("<s> <http://purl.org/dc/terms/language> \"deu\" .\n") == 1);
  CHECK(line_of("<s> <http://purl.org/dc/terms/title> \"t\" .\n"
                "<s> <http://purl.org/dc/terms/title> \"u\" .\n") == 2);
}

TEST_CASE("ntriples fixture file loads through load_corpus", "[corpus][ntriples]") {
  LoadResult r = load_corpus(fs::path(LODREC_TEST_DATA) / "demo" / "corpus.nt",
                             CorpusFormat::ntriples, std::string("de"));
  CHECK(r.records_read == 3);
  CHECK(r.dropped_by_language == 1);
  REQUIRE(r.corpus.records.size() == 2);
  CHECK(r.corpus.records[0].tags.size() == 3);
}
