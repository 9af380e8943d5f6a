#include "lodrec/evaluation.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "lodrec/error.hpp"
#include "lodrec/gamma.hpp"

namespace lodrec {

std::string_view to_string(Relevance r) noexcept {
  switch (r) {
    case Relevance::high: return "high";
    case Relevance::medium: return "medium";
    case Relevance::low: return "low";
    case Relevance::none: return "none";
  }
  return "none";
}

Relevance relevance_from_rating(int rating) {
  switch (rating) {
    case 3: return Relevance::high;
    case 2: return Relevance::medium;
    case 1: return Relevance::low;
    case 0: return Relevance::none;
    default: throw ParseError("rating " + std::to_string(rating) + " outside 0-3");
  }
}

namespace {

std::vector<std::string> split_csv(std::string_view line, const std::string& source,
                                   std::size_t lineno) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      if (was_quoted) throw ParseError(source, lineno, "text after closing quote");
      field += c;
    }
  }
  if (quoted) throw ParseError(source, lineno, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

const std::array<std::string_view, 5> kHeader = {"participant", "query_id", "recommended_id",
                                                 "method", "rating"};

}  // namespace

std::vector<RatingRecord> read_ratings_csv(std::istream& in, const std::string& source) {
  std::vector<RatingRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split_csv(line, source, lineno);
    if (!header_seen) {
      header_seen = true;
      bool match = cols.size() == kHeader.size();
      for (std::size_t i = 0; match && i < cols.size(); ++i) match = cols[i] == kHeader[i];
      if (!match) {
        throw ParseError(source, lineno,
                         "expected header participant,query_id,recommended_id,method,rating");
      }
      continue;
    }
    if (cols.size() != 5) {
      throw ParseError(source, lineno, "expected 5 fields, found " + std::to_string(cols.size()));
    }
    RatingRecord r;
    r.participant = cols[0];
    r.query_id = cols[1];
    r.recommended_id = cols[2];
    try {
      r.method = parse_method(cols[3]);
    } catch (const Error& e) {
      throw ParseError(source, lineno, e.what());
    }
    const std::string& rating = cols[4];
    auto [ptr, ec] = std::from_chars(rating.data(), rating.data() + rating.size(), r.rating);
    if (ec != std::errc() || ptr != rating.data() + rating.size() || r.rating < 0 || r.rating > 3) {
      throw ParseError(source, lineno, "malformed rating '" + rating + "' (expected 0-3)");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RatingRecord> load_ratings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ratings file " + path.string());
  return read_ratings_csv(in, path.string());
}

std::uint64_t ContingencyTable::row_total(Method m) const {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts[row(m)]) total += c;
  return total;
}

std::uint64_t ContingencyTable::column_total(Relevance r) const {
  return counts[0][static_cast<std::size_t>(r)] + counts[1][static_cast<std::size_t>(r)];
}

ContingencyTable aggregate(std::span<const RatingRecord> ratings) {
  ContingencyTable table;
  for (const RatingRecord& r : ratings) ++table.at(r.method, relevance_from_rating(r.rating));
  return table;
}

std::array<LevelDelta, 4> relative_deltas(const ContingencyTable& table) {
  std::array<LevelDelta, 4> out;
  for (Relevance level : kRelevanceLevels) {
    LevelDelta& d = out[static_cast<std::size_t>(level)];
    d.level = level;
    const double with = static_cast<double>(table.at(Method::with_lod, level));
    const double without = static_cast<double>(table.at(Method::without_lod, level));
    // Published convention: increases relative to with_lod, the decrease of
    // irrelevant results relative to without_lod.
    const bool use_without = level == Relevance::none;
    const double denominator = use_without ? without : with;
    if (denominator == 0.0) {
      d.error = std::string("division by zero: ") +
                (use_without ? "without_lod" : "with_lod") + " count for " +
                std::string(to_string(level)) + " is 0";
      continue;
    }
    d.percent = (with - without) / denominator * 100.0;
  }
  return out;
}

ChiSquareResult pearson_chi_square(const std::vector<std::vector<double>>& observed) {
  const std::size_t rows = observed.size();
  if (rows < 2) throw DataError("chi-square needs at least 2 rows");
  const std::size_t cols = observed.front().size();
  if (cols < 2) throw DataError("chi-square needs at least 2 columns");

  std::vector<double> row_totals(rows, 0.0);
  std::vector<double> col_totals(cols, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (observed[i].size() != cols) throw DataError("chi-square table is ragged");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!(observed[i][j] >= 0.0)) throw DataError("chi-square counts must be non-negative");
      row_totals[i] += observed[i][j];
      col_totals[j] += observed[i][j];
      grand += observed[i][j];
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_totals[j] == 0.0) throw DataError("zero column total in column " + std::to_string(j));
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_totals[i] == 0.0) throw DataError("zero row total in row " + std::to_string(i));
  }

  ChiSquareResult result;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double expected = row_totals[i] * col_totals[j] / grand;
      const double diff = observed[i][j] - expected;
      result.statistic += diff * diff / expected;
    }
  }
  result.df = static_cast<int>((rows - 1) * (cols - 1));
  result.p_value = chi_square_upper_tail(result.statistic, result.df);
  return result;
}

ChiSquareResult chi_square(const ContingencyTable& table) {
  std::vector<std::vector<double>> observed(2, std::vector<double>(4));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 4; ++j) observed[i][j] = static_cast<double>(table.counts[i][j]);
  }
  return pearson_chi_square(observed);
}

nlohmann::ordered_json evaluation_report(const ContingencyTable& table) {
  using json = nlohmann::ordered_json;
  json report;
  json t;
  for (Method m : {Method::with_lod, Method::without_lod}) {
    json row;
    for (Relevance r : kRelevanceLevels) row[std::string(to_string(r))] = table.at(m, r);
    row["total"] = table.row_total(m);
    t[std::string(to_string(m))] = std::move(row);
  }
  report["table"] = std::move(t);

  json deltas;
  for (const LevelDelta& d : relative_deltas(table)) {
    json entry;
    entry["percent"] = d.percent ? json(*d.percent) : json(nullptr);
    if (!d.error.empty()) entry["error"] = d.error;
    deltas[std::string(to_string(d.level))] = std::move(entry);
  }
  report["relative_deltas"] = std::move(deltas);

  json chi;
  try {
    ChiSquareResult r = chi_square(table);
    chi["statistic"] = r.statistic;
    chi["df"] = r.df;
    chi["p_value"] = r.p_value;
  } catch (const DataError& e) {
    chi["error"] = e.what();
  }
  report["chi_square"] = std::move(chi);
  return report;
}

}  // namespace lodrec
