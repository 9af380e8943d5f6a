#include "lodrec/vectorizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "lodrec/error.hpp"
#include "lodrec/parallel.hpp"

namespace lodrec {

FragmentVocabulary::FragmentVocabulary(std::vector<Fragment> fragments,
                                       std::vector<std::size_t> df, std::size_t n_docs,
                                       FragmentMode mode)
    : fragments_(std::move(fragments)), df_(std::move(df)), n_docs_(n_docs), mode_(mode) {
  if (df_.size() != fragments_.size()) {
    throw DataError("vocabulary: df table size does not match fragment count");
  }
  for (std::size_t i = 0; i < fragments_.size(); ++i) {
    if (i > 0 && !(fragments_[i - 1] < fragments_[i])) {
      throw DataError("vocabulary: fragments not strictly ordered at " + to_string(fragments_[i]));
    }
    if (df_[i] == 0 || df_[i] > n_docs_) {
      throw DataError("vocabulary: document frequency out of range for " +
                      to_string(fragments_[i]));
    }
    index_.emplace(fragments_[i], i);
  }
  fingerprint_ = vocabulary_fingerprint(fragments_);
}

std::optional<std::size_t> FragmentVocabulary::index_of(const Fragment& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FragmentVocabulary build_vocabulary(std::span<const EnrichedVideo> enriched, FragmentMode mode) {
  std::map<Fragment, std::size_t> df;
  for (const EnrichedVideo& video : enriched) {
    std::set<Fragment> present;
    for (const ResolvedTag& tag : video.resolved) {
      for (const DdcCode& code : tag.ddc_codes) {
        for (Fragment& f : fragment(code, mode)) present.insert(std::move(f));
      }
    }
    for (const Fragment& f : present) ++df[f];
  }
  std::vector<Fragment> fragments;
  std::vector<std::size_t> counts;
  fragments.reserve(df.size());
  counts.reserve(df.size());
  for (auto& [f, n] : df) {
    fragments.push_back(f);
    counts.push_back(n);
  }
  return FragmentVocabulary(std::move(fragments), std::move(counts), enriched.size(), mode);
}

void write_vocabulary(std::span<const Fragment> fragments, std::ostream& out) {
  for (const Fragment& f : fragments) out << f.level << '\t' << f.prefix << '\n';
}

std::string serialize_vocabulary(std::span<const Fragment> fragments) {
  std::ostringstream out;
  write_vocabulary(fragments, out);
  return out.str();
}

std::vector<Fragment> read_vocabulary(std::istream& in, const std::string& source) {
  std::vector<Fragment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(source, lineno, "expected level<TAB>prefix");
    Fragment f;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, f.level);
    if (ec != std::errc() || ptr != line.data() + tab) {
      throw ParseError(source, lineno, "invalid level");
    }
    f.prefix = line.substr(tab + 1);
    bool digits = !f.prefix.empty() &&
                  std::all_of(f.prefix.begin(), f.prefix.end(),
                              [](char c) { return c >= '0' && c <= '9'; });
    if (!digits || f.prefix.size() != f.level) {
      throw ParseError(source, lineno, "prefix must be " + std::to_string(f.level) + " digits");
    }
    if (!out.empty() && !(out.back() < f)) throw ParseError(source, lineno, "fragments out of order");
    out.push_back(std::move(f));
  }
  return out;
}

std::uint64_t vocabulary_fingerprint(std::span<const Fragment> fragments) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_vocabulary(fragments)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[fingerprint & 0xF];
    fingerprint >>= 4;
  }
  return out;
}

std::size_t term_frequency(const EnrichedVideo& video, const Fragment& f,
                           const FragmentVocabulary& vocab) {
  if (!vocab.index_of(f)) throw DataError("fragment " + to_string(f) + " not in vocabulary");
  std::size_t tf = 0;
  for (const ResolvedTag& tag : video.resolved) {
    for (const DdcCode& code : tag.ddc_codes) {
      for (const Fragment& g : fragment(code, vocab.mode())) {
        if (g == f) ++tf;
      }
    }
  }
  return tf;
}

double inverse_document_frequency(std::size_t n_docs, std::size_t df) {
  return std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

DdcVector vectorize(const EnrichedVideo& video, const FragmentVocabulary& vocab) {
  DdcVector out;
  out.video_id = video.video.id;
  out.fingerprint = vocab.fingerprint();

  std::map<std::size_t, std::size_t> tf;
  for (const ResolvedTag& tag : video.resolved) {
    for (const DdcCode& code : tag.ddc_codes) {
      for (const Fragment& f : fragment(code, vocab.mode())) {
        if (auto dim = vocab.index_of(f)) {
          ++tf[*dim];
        } else {
          ++out.skipped_fragments;
        }
      }
    }
  }
  for (auto [dim, count] : tf) {
    double weight =
        static_cast<double>(count) * inverse_document_frequency(vocab.n_docs(), vocab.df(dim));
    if (weight > 0.0) out.entries.push_back({static_cast<std::uint32_t>(dim), weight});
  }
  return out;
}

std::vector<DdcVector> vectorize_all(std::span<const EnrichedVideo> enriched,
                                     const FragmentVocabulary& vocab, unsigned threads) {
  std::vector<DdcVector> out(enriched.size());
  parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = vectorize(enriched[i], vocab); });
  return out;
}

namespace {

std::optional<double> finish_cosine(double dot, double norm_a, double norm_b) {
  if (norm_a == 0.0 || norm_b == 0.0) return std::nullopt;
  double c = dot / std::sqrt(norm_a * norm_b);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

std::optional<double> cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return finish_cosine(dot, na, nb);
}

std::optional<double> cosine(std::span<const SparseEntry> a, std::span<const SparseEntry> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const SparseEntry& e : a) na += e.weight * e.weight;
  for (const SparseEntry& e : b) nb += e.weight * e.weight;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->dim < ib->dim) {
      ++ia;
    } else if (ib->dim < ia->dim) {
      ++ib;
    } else {
      dot += ia->weight * ib->weight;
      ++ia;
      ++ib;
    }
  }
  return finish_cosine(dot, na, nb);
}

std::optional<double> ddc_similarity(const DdcVector& a, const DdcVector& b) {
  if (a.fingerprint != b.fingerprint) {
    throw VocabularyMismatchError("ω vectors of " + a.video_id + " and " + b.video_id +
                                  " come from different vocabularies");
  }
  return cosine(std::span<const SparseEntry>(a.entries), std::span<const SparseEntry>(b.entries));
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::uint64_t parse_fingerprint(std::string_view hex, const std::string& source, std::size_t line) {
  std::uint64_t fp = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), fp, 16);
  if (ec != std::errc() || ptr != hex.data() + hex.size() || hex.size() != 16) {
    throw ParseError(source, line, "invalid fingerprint '" + std::string(hex) + "'");
  }
  return fp;
}

}  // namespace

void write_ddc_vectors(std::span<const DdcVector> vectors, std::uint64_t fingerprint,
                       std::ostream& out) {
  out << "#fingerprint\t" << fingerprint_hex(fingerprint) << '\n';
  std::string line;
  for (const DdcVector& v : vectors) {
    if (v.fingerprint != fingerprint) {
      throw VocabularyMismatchError("ω vector of " + v.video_id +
                                    " does not match the file fingerprint");
    }
    line = v.video_id;
    line += '\t';
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
      if (i > 0) line += ',';
      line += std::to_string(v.entries[i].dim);
      line += ':';
      append_double(line, v.entries[i].weight);
    }
    out << line << '\n';
  }
}

DdcVectorFile read_ddc_vectors(std::istream& in, const std::string& source) {
  DdcVectorFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!have_header) {
      const std::string_view prefix = "#fingerprint\t";
      if (line.rfind(prefix, 0) != 0) throw ParseError(source, lineno, "missing fingerprint header");
      file.fingerprint = parse_fingerprint(std::string_view(line).substr(prefix.size()), source, lineno);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError(source, lineno, "expected id<TAB>entries");
    DdcVector v;
    v.video_id = line.substr(0, tab);
    v.fingerprint = file.fingerprint;
    std::string_view rest = std::string_view(line).substr(tab + 1);
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      std::size_t colon = item.find(':');
      if (colon == std::string_view::npos) throw ParseError(source, lineno, "expected dim:weight");
      SparseEntry e;
      auto r1 = std::from_chars(item.data(), item.data() + colon, e.dim);
      auto r2 = std::from_chars(item.data() + colon + 1, item.data() + item.size(), e.weight);
      if (r1.ec != std::errc() || r1.ptr != item.data() + colon || r2.ec != std::errc() ||
          r2.ptr != item.data() + item.size() || !(e.weight > 0.0)) {
        throw ParseError(source, lineno, "invalid entry '" + std::string(item) + "'");
      }
      if (!v.entries.empty() && v.entries.back().dim >= e.dim) {
        throw ParseError(source, lineno, "dimensions not strictly increasing");
      }
      v.entries.push_back(e);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    file.vectors.push_back(std::move(v));
  }
  if (!have_header) throw ParseError(source, 1, "missing fingerprint header");
  return file;
}

}  // namespace lodrec
