#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lodrec/method.hpp"

namespace lodrec {

/// Relevance levels in contingency-table column order.
enum class Relevance { high = 0, medium = 1, low = 2, none = 3 };

inline constexpr std::array<Relevance, 4> kRelevanceLevels = {
    Relevance::high, Relevance::medium, Relevance::low, Relevance::none};

std::string_view to_string(Relevance r) noexcept;
/// 3 -> high, 2 -> medium, 1 -> low, 0 -> none. Throws ParseError otherwise.
Relevance relevance_from_rating(int rating);

struct RatingRecord {
  std::string participant;
  std::string query_id;
  std::string recommended_id;
  Method method = Method::with_lod;
  int rating = 0;  // 0 none, 1 low, 2 medium, 3 high
};

/// CSV with header `participant,query_id,recommended_id,method,rating`.
/// Double-quoted fields are supported. Errors carry the line number.
std::vector<RatingRecord> read_ratings_csv(std::istream& in, const std::string& source = "<ratings>");
std::vector<RatingRecord> load_ratings(const std::filesystem::path& path);

/// Rows: with_lod, without_lod. Columns: high, medium, low, none.
struct ContingencyTable {
  std::array<std::array<std::uint64_t, 4>, 2> counts{};

  static constexpr std::size_t row(Method m) noexcept { return m == Method::with_lod ? 0 : 1; }
  std::uint64_t& at(Method m, Relevance r) { return counts[row(m)][static_cast<std::size_t>(r)]; }
  std::uint64_t at(Method m, Relevance r) const {
    return counts[row(m)][static_cast<std::size_t>(r)];
  }
  std::uint64_t row_total(Method m) const;
  std::uint64_t column_total(Relevance r) const;

  bool operator==(const ContingencyTable&) const = default;
};

ContingencyTable aggregate(std::span<const RatingRecord> ratings);

/// Percentage change of one relevance level between the two methods, or the
/// reason it is undefined.
struct LevelDelta {
  Relevance level = Relevance::high;
  std::optional<double> percent;
  std::string error;
};

/// (with - without) / denominator * 100, where the denominator is the with_lod
/// count for high, medium and low but the without_lod count for none. This mixed
/// convention is the one that yields the reference +0.97 / +4.56 / +11.29 /
/// -18.17 figures; do not "fix" it to a single denominator.
std::array<LevelDelta, 4> relative_deltas(const ContingencyTable& table);

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// Pearson's test of independence without continuity correction on an r x c
/// table of counts. Throws DataError for a zero row or column total, or a table
/// smaller than 2 x 2.
ChiSquareResult pearson_chi_square(const std::vector<std::vector<double>>& observed);
ChiSquareResult chi_square(const ContingencyTable& table);

/// Table, deltas and the chi-square result (or its error) as JSON.
nlohmann::ordered_json evaluation_report(const ContingencyTable& table);

}  // namespace lodrec
