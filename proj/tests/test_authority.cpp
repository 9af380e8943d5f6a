#include <sstream>

#include <catch_amalgamated.hpp>

#include "lodrec/authority.hpp"
#include "lodrec/error.hpp"
#include "lodrec/text.hpp"

using namespace lodrec;

namespace {

AuthoritySnapshot snapshot_from(const std::string& tsv) {
  std::istringstream in(tsv);
  return read_snapshot(in);
}

VideoRecord video(const std::string& id, std::vector<std::string> surfaces) {
  VideoRecord v;
  v.id = id;
  v.language = "de";
  v.title = id;
  for (auto& s : surfaces) v.tags.push_back(Tag{std::move(s), Provenance::transcript, std::nullopt});
  return v;
}

const char* kSparqlRow = "sparql\tgnd:4409615-8\t006.74;005.74;005.133\n";

}  // namespace

TEST_CASE("snapshot row yields an entry with every DDC code", "[authority]") {
  AuthoritySnapshot s = snapshot_from(kSparqlRow);
  REQUIRE(s.size() == 1);
  const AuthorityEntry* e = s.find("sparql");
  REQUIRE(e != nullptr);
  CHECK(e->gnd_id == "gnd:4409615-8");
  REQUIRE(e->ddc_codes.size() == 3);
  CHECK(e->ddc_codes[0].raw == "006.74");
  CHECK(e->ddc_codes[1].raw == "005.74");
  CHECK(e->ddc_codes[2].raw == "005.133");
}

TEST_CASE("empty snapshot file and comment-only files are empty", "[authority]") {
  CHECK(snapshot_from("").empty());
  CHECK(snapshot_from("# header\n\n# more\n").empty());
}

TEST_CASE("snapshot rows may have no codes", "[authority]") {
  AuthoritySnapshot s = snapshot_from("Tafelbild\tgnd:1\t\n");
  REQUIRE(s.find("tafelbild") != nullptr);
  CHECK(s.find("tafelbild")->ddc_codes.empty());
}

TEST_CASE("malformed snapshot rows report their row number", "[authority]") {
  auto line_of = [](const std::string& tsv) -> std::size_t {
    try {
      snapshot_from(tsv);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(std::string(kSparqlRow) + "broken\tgnd:2\t12.3.4\n") == 2);
  CHECK(line_of("# c\nonly two\tcolumns\n") == 2);
  CHECK(line_of("x\t\t005\n") == 1);
  CHECK(line_of(std::string(kSparqlRow) + "# c\n  SPARQL \tgnd:9\t005\n") == 3);  // duplicate key
}

TEST_CASE("lookup normalization folds case, NFC and whitespace", "[authority]") {
  CHECK(text::normalize_key("  Zell   Biologie\t") == "zell biologie");
  // "Universität" precomposed vs. "a" + combining diaeresis.
  CHECK(text::normalize_key("Universit\xC3\xA4t") == text::normalize_key("UNIVERSITA\xCC\x88T"));
  CHECK(text::normalize_key("Stra\xC3\x9F" "e") == "strasse");

  AuthoritySnapshot s = snapshot_from("Zell Biologie\tgnd:1\t571.6\n");
  CHECK(s.find("ZELL   biologie") != nullptr);
}

TEST_CASE("enrich resolves known tags and counts misses", "[authority]") {
  AuthoritySnapshot s = snapshot_from(kSparqlRow);
  Corpus c;
  c.records = {video("v1", {"SPARQL"}), video("v2", {}), video("v3", {"SPARQL", "zzz-unknown"})};

  auto enriched = enrich(c, s);
  REQUIRE(enriched.size() == 3);

  CHECK(enriched[0].resolved.size() == 1);
  CHECK(enriched[0].resolved[0].ddc_codes.size() == 3);
  CHECK(enriched[0].unresolved_count == 0);
  CHECK(enriched[0].video.tags[0].gnd_id == std::optional<std::string>("gnd:4409615-8"));

  CHECK(enriched[1].resolved.empty());
  CHECK(enriched[1].unresolved_count == 0);

  CHECK(enriched[2].resolved.size() == 1);
  CHECK(enriched[2].resolved[0].tag_index == 0);
  CHECK(enriched[2].unresolved_count == 1);
  CHECK(enriched[2].video.tags.size() == 2);  // misses are kept on the record
  CHECK_FALSE(enriched[2].video.tags[1].gnd_id.has_value());

  // The corpus itself is untouched.
  CHECK_FALSE(c.records[0].tags[0].gnd_id.has_value());
}

TEST_CASE("enrich conserves tag counts and is deterministic", "[authority][property]") {
  AuthoritySnapshot s = snapshot_from(
      "SPARQL\tgnd:1\t006.74;005.74\nDatenbank\tgnd:2\t005.74\nGenetik\tgnd:3\t576.5\n");
  std::vector<std::string> pool = {"SPARQL", "sparql ", "Datenbank", "Genetik", "Mitose", "xyz"};
  Corpus c;
  std::size_t total_tags = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> tags;
    for (int t = 0; t < i % 5; ++t) tags.push_back(pool[(i * 7 + t * 3) % pool.size()]);
    total_tags += tags.size();
    c.records.push_back(video("v" + std::to_string(i), tags));
  }
  auto first = enrich(c, s, 4);
  auto second = enrich(c, s, 1);
  CHECK(first == second);

  std::size_t accounted = 0;
  for (const auto& e : first) {
    std::set<std::size_t> distinct;
    for (const auto& r : e.resolved) {
      CHECK(r.tag_index < e.video.tags.size());
      distinct.insert(r.tag_index);
    }
    CHECK(e.unresolved_count == e.video.tags.size() - distinct.size());
    accounted += distinct.size() + e.unresolved_count;
  }
  CHECK(accounted == total_tags);

  EnrichmentSummary sum = summarize(first);
  CHECK(sum.tags == total_tags);
  CHECK(sum.resolved_tags + sum.unresolved_tags == total_tags);
}
