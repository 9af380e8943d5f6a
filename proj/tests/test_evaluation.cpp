#include <algorithm>
#include <random>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "lodrec/error.hpp"
#include "lodrec/evaluation.hpp"

using namespace lodrec;
using Catch::Approx;

namespace {

ContingencyTable table(std::array<std::uint64_t, 4> with, std::array<std::uint64_t, 4> without) {
  ContingencyTable t;
  t.counts[0] = with;
  t.counts[1] = without;
  return t;
}

const ContingencyTable kStudy = table({411, 461, 673, 455}, {407, 440, 597, 556});

std::vector<RatingRecord> ratings_for(const ContingencyTable& t) {
  std::vector<RatingRecord> out;
  for (Method m : {Method::with_lod, Method::without_lod})
    for (Relevance r : kRelevanceLevels)
      for (std::uint64_t i = 0; i < t.at(m, r); ++i)
        out.push_back({"p", "q", "r" + std::to_string(i), m, 3 - static_cast<int>(r)});
  return out;
}

std::vector<RatingRecord> parse(const std::string& csv) {
  std::istringstream in(csv);
  return read_ratings_csv(in);
}

const char* kHeader = "participant,query_id,recommended_id,method,rating\n";

}  // namespace

TEST_CASE("study ratings aggregate to the reference table", "[evaluation]") {
  auto ratings = load_ratings(LODREC_TEST_DATA "/study_ratings.csv");
  CHECK(ratings.size() == 4000);
  ContingencyTable t = aggregate(ratings);
  CHECK(t == kStudy);
  CHECK(t.row_total(Method::with_lod) == 2000);
  CHECK(t.row_total(Method::without_lod) == 2000);
  CHECK(t.column_total(Relevance::none) == 1011);
}

TEST_CASE("aggregate edge cases", "[evaluation]") {
  CHECK(aggregate(std::vector<RatingRecord>{}) == ContingencyTable{});
  std::vector<RatingRecord> one;
  for (int r = 0; r <= 3; ++r) one.push_back({"p", "q", "x", Method::without_lod, r});
  ContingencyTable t = aggregate(one);
  for (Relevance r : kRelevanceLevels) {
    CHECK(t.at(Method::without_lod, r) == 1);
    CHECK(t.at(Method::with_lod, r) == 0);
  }
}

TEST_CASE("aggregate ignores record order", "[evaluation][property]") {
  auto ratings = ratings_for(kStudy);
  std::mt19937 rng(8);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(ratings.begin(), ratings.end(), rng);
    CHECK(aggregate(ratings) == kStudy);
  }
}

TEST_CASE("relative deltas on the study table", "[evaluation]") {
  auto d = relative_deltas(kStudy);
  CHECK(*d[0].percent == Approx(0.97).margin(0.01));
  CHECK(*d[1].percent == Approx(4.56).margin(0.01));
  CHECK(*d[2].percent == Approx(11.29).margin(0.01));
  CHECK(*d[3].percent == Approx(-18.17).margin(0.01));
  // Oracle: the mixed-denominator formula written out.
  CHECK(*d[0].percent == Approx((411.0 - 407.0) / 411.0 * 100).margin(1e-12));
  CHECK(*d[3].percent == Approx((455.0 - 556.0) / 556.0 * 100).margin(1e-12));
}

TEST_CASE("relative delta corner cases", "[evaluation]") {
  for (const auto& d : relative_deltas(table({5, 6, 7, 8}, {5, 6, 7, 8}))) CHECK(*d.percent == 0.0);

  auto half = relative_deltas(table({2, 1, 1, 1}, {1, 1, 1, 1}));
  CHECK(*half[0].percent == Approx(50.0).margin(1e-12));

  auto zero = relative_deltas(table({0, 1, 1, 1}, {3, 1, 1, 0}));
  CHECK_FALSE(zero[0].percent.has_value());
  CHECK_FALSE(zero[0].error.empty());
  CHECK_FALSE(zero[3].percent.has_value());
  CHECK(zero[1].percent.has_value());
}

TEST_CASE("chi-square on the study table", "[evaluation]") {
  ChiSquareResult r = chi_square(kStudy);
  CHECK(r.statistic == Approx(15.1471).margin(0.0005));
  CHECK(r.df == 3);
  CHECK(r.p_value == Approx(0.0017).margin(5e-6));
}

TEST_CASE("chi-square corner cases", "[evaluation]") {
  ChiSquareResult same = chi_square(table({5, 6, 7, 8}, {5, 6, 7, 8}));
  CHECK(same.statistic == Approx(0.0).margin(1e-12));
  CHECK(same.p_value == Approx(1.0).margin(1e-12));

  ChiSquareResult two = pearson_chi_square({{10, 0}, {0, 10}});
  CHECK(two.statistic == Approx(20.0).margin(1e-12));
  CHECK(two.df == 1);

  CHECK_THROWS_AS(chi_square(table({1, 0, 1, 1}, {1, 0, 1, 1})), DataError);
  CHECK_THROWS_AS(chi_square(table({1, 1, 1, 1}, {0, 0, 0, 0})), DataError);
  CHECK_THROWS_AS(pearson_chi_square({{1, 2}}), DataError);
}

TEST_CASE("chi-square is invariant to row and column order", "[evaluation][property]") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> t(2, std::vector<double>(4));
    for (auto& row : t)
      for (auto& c : row) c = 1 + static_cast<double>(rng() % 500);
    ChiSquareResult base = pearson_chi_square(t);
    auto swapped = t;
    std::swap(swapped[0], swapped[1]);
    CHECK(pearson_chi_square(swapped).statistic == Approx(base.statistic).epsilon(1e-12));
    std::array<std::size_t, 4> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    auto permuted = t;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 4; ++c) permuted[r][c] = t[r][perm[c]];
    ChiSquareResult p = pearson_chi_square(permuted);
    CHECK(p.statistic == Approx(base.statistic).epsilon(1e-12));
    CHECK(p.p_value == Approx(base.p_value).epsilon(1e-10));
  }
}

TEST_CASE("ratings CSV parsing", "[evaluation][io]") {
  auto ok = parse(std::string(kHeader) + "p1,q1,r1,with_lod,3\n\"p,2\",q1,r2,without_lod,0\n");
  REQUIRE(ok.size() == 2);
  CHECK(ok[1].participant == "p,2");
  CHECK(ok[1].method == Method::without_lod);

  CHECK(parse(kHeader).empty());
  CHECK_THROWS_AS(parse("a,b,c\n"), ParseError);

  try {
    parse(std::string(kHeader) + "p1,q1,r1,with_lod,3\np1,q1,r2,hybrid,2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse(std::string(kHeader) + "p1,q1,r1,with_lod,4\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("evaluation report", "[evaluation]") {
  auto j = evaluation_report(kStudy);
  CHECK(j["table"]["with_lod"]["high"] == 411);
  CHECK(j["table"]["without_lod"]["total"] == 2000);
  CHECK(j["chi_square"]["df"] == 3);
  CHECK(j["relative_deltas"]["none"]["percent"].get<double>() == Approx(-18.17).margin(0.01));

  auto empty = evaluation_report(ContingencyTable{});
  CHECK(empty["chi_square"].contains("error"));
  CHECK(empty["relative_deltas"]["high"].contains("error"));
}
