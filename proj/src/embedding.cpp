#include "lodrec/embedding.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "lodrec/error.hpp"
#include "lodrec/parallel.hpp"
#include "lodrec/text.hpp"
#include "lodrec/vectorizer.hpp"

namespace lodrec {

bool EmbeddingTable::add(std::string_view token, std::span<const float> values) {
  if (values.size() != dim_) throw DimensionMismatchError(dim_, values.size());
  for (float v : values) {
    if (!std::isfinite(v)) throw DataError("non-finite component for token '" + std::string(token) + "'");
  }
  std::string key = text::fold_case(token);
  auto [it, inserted] = index_.try_emplace(key, tokens_.size());
  if (!inserted) return false;
  tokens_.push_back(std::move(key));
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

std::optional<std::span<const float>> EmbeddingTable::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable read_embeddings(std::istream& in, std::optional<std::size_t> limit,
                               const std::string& source) {
  std::optional<EmbeddingTable> table;
  std::optional<std::size_t> header_dim;
  std::vector<float> values;
  std::string line;
  std::size_t lineno = 0;
  std::size_t rows = 0;
  bool seen_content = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cols = fields(line);
    if (cols.empty()) continue;

    if (!seen_content) {
      seen_content = true;
      std::size_t count = 0, dim = 0;
      if (cols.size() == 2 && parse_number(cols[0], count) && parse_number(cols[1], dim)) {
        if (dim == 0) throw ParseError(source, lineno, "header declares dimension 0");
        header_dim = dim;
        continue;
      }
    }
    if (limit && rows >= *limit) break;

    if (cols.size() < 2) throw ParseError(source, lineno, "row has no vector components");
    std::size_t arity = cols.size() - 1;
    if (!table) table.emplace(header_dim.value_or(arity));
    if (arity != table->dim()) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(table->dim()) + " components, found " +
                           std::to_string(arity));
    }
    values.resize(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      if (!parse_number(cols[i + 1], values[i]) || !std::isfinite(values[i])) {
        throw ParseError(source, lineno, "non-numeric component '" + std::string(cols[i + 1]) + "'");
      }
    }
    table->add(cols[0], values);
    ++rows;
  }

  if (!table) {
    if (limit && *limit == 0 && seen_content) return EmbeddingTable(header_dim.value_or(0));
    throw ParseError(source, lineno, "no embedding rows");
  }
  return std::move(*table);
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, std::optional<std::size_t> limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings file " + path.string());
  return read_embeddings(in, limit, path.string());
}

void write_embeddings(const EmbeddingTable& table, std::ostream& out) {
  out << table.size() << ' ' << table.dim() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.tokens()[i];
    for (float v : table.row(i)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

std::vector<std::string> tokenize(std::string_view text_in) {
  std::string folded = text::fold_case(text_in);
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(folded.data(), static_cast<int32_t>(folded.size())));

  std::vector<std::string> tokens;
  icu::UnicodeString current;
  std::size_t code_points = 0;
  bool all_digits = true;
  auto flush = [&] {
    if (code_points >= 2 && !all_digits) {
      std::string utf8;
      current.toUTF8String(utf8);
      tokens.push_back(std::move(utf8));
    }
    current.remove();
    code_points = 0;
    all_digits = true;
  };
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
    UChar32 c = s.char32At(i);
    bool mark = (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
    if (u_isalnum(c) || (mark && code_points > 0)) {
      current.append(c);
      ++code_points;
      all_digits = all_digits && u_isdigit(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

StopList load_stop_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open stop-word list " + path.string());
  StopList out;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = text::trim(line);
    if (word.empty() || word.front() == '#') continue;
    out.insert(text::fold_case(word));
  }
  return out;
}

std::vector<std::string> video_tokens(const VideoRecord& video) {
  std::vector<std::string> out = tokenize(video.title);
  for (const Tag& tag : video.tags) {
    auto t = tokenize(tag.surface);
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  auto a = tokenize(video.abstract);
  out.insert(out.end(), std::make_move_iterator(a.begin()), std::make_move_iterator(a.end()));
  return out;
}

DocVector embed_video(const VideoRecord& video, const EmbeddingTable& table,
                      const StopList* stop_words) {
  DocVector doc;
  doc.video_id = video.id;
  doc.vector.assign(table.dim(), 0.0);
  for (const std::string& token : video_tokens(video)) {
    if (stop_words != nullptr && stop_words->contains(token)) continue;
    auto row = table.find(token);
    if (!row) {
      ++doc.tokens_missed;
      continue;
    }
    ++doc.tokens_used;
    for (std::size_t d = 0; d < row->size(); ++d) doc.vector[d] += static_cast<double>((*row)[d]);
  }
  if (doc.tokens_used > 0) {
    const double n = static_cast<double>(doc.tokens_used);
    for (double& v : doc.vector) v /= n;
  }
  return doc;
}

std::vector<DocVector> embed_corpus(const Corpus& corpus, const EmbeddingTable& table,
                                    const StopList* stop_words, unsigned threads) {
  std::vector<DocVector> out(corpus.records.size());
  parallel_for(out.size(), threads,
               [&](std::size_t i) { out[i] = embed_video(corpus.records[i], table, stop_words); });
  return out;
}

std::optional<double> text_similarity(const DocVector& a, const DocVector& b) {
  if (a.vector.size() != b.vector.size()) throw DimensionMismatchError(a.vector.size(), b.vector.size());
  if (a.degenerate() || b.degenerate()) return std::nullopt;
  return cosine(std::span<const double>(a.vector), std::span<const double>(b.vector));
}

void write_doc_vectors(std::span<const DocVector> vectors, std::ostream& out) {
  char buf[32];
  std::string line;
  for (const DocVector& v : vectors) {
    line = v.video_id;
    line += '\t';
    line += std::to_string(v.tokens_used);
    line += '\t';
    line += std::to_string(v.tokens_missed);
    line += '\t';
    for (std::size_t i = 0; i < v.vector.size(); ++i) {
      if (i > 0) line += ',';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v.vector[i]);
      line.append(buf, ptr);
    }
    out << line << '\n';
  }
}

std::vector<DocVector> read_doc_vectors(std::istream& in, const std::string& source) {
  std::vector<DocVector> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    for (int i = 0; i < 3; ++i) {
      std::size_t tab = rest.find('\t');
      if (tab == std::string_view::npos) throw ParseError(source, lineno, "expected 4 tab-separated columns");
      cols.push_back(rest.substr(0, tab));
      rest = rest.substr(tab + 1);
    }
    DocVector v;
    v.video_id = std::string(cols[0]);
    if (v.video_id.empty() || !parse_number(cols[1], v.tokens_used) ||
        !parse_number(cols[2], v.tokens_missed)) {
      throw ParseError(source, lineno, "invalid id or token counts");
    }
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      double x = 0.0;
      if (!parse_number(rest.substr(0, comma), x)) throw ParseError(source, lineno, "invalid component");
      v.vector.push_back(x);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (!out.empty() && out.front().vector.size() != v.vector.size()) {
      throw ParseError(source, lineno, "inconsistent dimension");
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace lodrec
