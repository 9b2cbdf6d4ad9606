#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hansard/errors.hpp"
#include "hansard/tsv.hpp"
#include "hansard/unicode.hpp"

// Tokenization and document-term count matrices. The cleaning recipe:
// compose to NFC, split on whitespace and hyphens, drop punctuation
// characters, drop tokens containing digits, lowercase, drop stopwords.
// The matrix vocabulary keeps a term only when its document frequency is
// at least min_doc_frequency of all documents (strictly fewer is removed).

namespace hansard {

struct PreprocessConfig {
  bool lowercase = true;
  bool strip_numbers = true;
  bool strip_punct = true;
  std::set<std::string> stopword_list;
  double min_doc_frequency = 0.0;  // fraction of documents, [0, 1]
  // Documents shorter than this many cleaned tokens count as interjections
  // and are dropped when assembling documents from contributions.
  std::size_t min_tokens = 10;
};

inline bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') ||
           (cp >= '[' && cp <= '`') || (cp >= '{' && cp <= '~');
  }
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x2026:                                         // ellipsis
    case 0x00A1: case 0x00BF: case 0x00B7:
      return true;
    default:
      return false;
  }
}

inline bool is_token_break(char32_t cp) {
  // Hyphenated words split on the hyphen.
  return is_unicode_space(cp) || cp == '-' || cp == 0x2010 || cp == 0x2013 ||
         cp == 0x2014;
}

inline std::vector<std::string> tokenize(std::string_view text,
                                         const PreprocessConfig& cfg) {
  const std::string composed = nfc_latin(text);
  std::vector<std::string> tokens;
  std::string current;
  bool has_digit = false;

  auto flush = [&] {
    if (!current.empty()) {
      if (!(cfg.strip_numbers && has_digit) &&
          !cfg.stopword_list.count(current)) {
        tokens.push_back(current);
      }
      current.clear();
    }
    has_digit = false;
  };

  std::size_t i = 0;
  while (i < composed.size()) {
    char32_t cp = utf8_next(composed, i);
    if (is_token_break(cp)) {
      flush();
      continue;
    }
    if (cfg.strip_punct && is_punct_cp(cp)) continue;
    if (cp >= '0' && cp <= '9') has_digit = true;
    if (cfg.lowercase) cp = to_lower_cp(cp);
    utf8_append(current, cp);
  }
  flush();
  return tokens;
}

inline std::set<std::string> load_stopwords(const std::string& path) {
  std::set<std::string> words;
  for (const auto& line : tsv::split_lines(tsv::read_file(path))) {
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  return words;
}

// Documents x terms, raw token counts, dense row-major storage.
struct CountMatrix {
  std::vector<std::string> docs;
  std::vector<std::string> terms;  // lexicographic
  std::vector<std::uint64_t> counts;

  std::uint64_t& at(std::size_t doc, std::size_t term) {
    return counts[doc * terms.size() + term];
  }
  std::uint64_t at(std::size_t doc, std::size_t term) const {
    return counts[doc * terms.size() + term];
  }

  std::size_t n_docs() const { return docs.size(); }
  std::size_t n_terms() const { return terms.size(); }

  std::uint64_t row_sum(std::size_t doc) const {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < terms.size(); ++j) s += at(doc, j);
    return s;
  }

  std::size_t doc_index(const std::string& label) const {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (docs[i] == label) return i;
    }
    throw Error("no document labelled '" + label + "' in matrix");
  }
};

inline CountMatrix build_matrix(
    const std::vector<std::pair<std::string, std::string>>& docs,
    const PreprocessConfig& cfg) {
  if (cfg.min_doc_frequency < 0.0 || cfg.min_doc_frequency > 1.0)
    throw InvariantViolation("min_doc_frequency outside [0, 1]");

  std::vector<std::map<std::string, std::uint64_t>> doc_counts(docs.size());
  std::set<std::string> labels;
  std::map<std::string, std::size_t> doc_frequency;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!labels.insert(docs[i].first).second)
      throw DuplicateLabel("document label '" + docs[i].first + "' repeated");
    for (auto& tok : tokenize(docs[i].second, cfg)) ++doc_counts[i][tok];
    for (const auto& [term, _] : doc_counts[i]) ++doc_frequency[term];
  }

  // "appears in less than min_doc_frequency of documents" is a strict
  // less-than: a term exactly on the boundary stays.
  const double cutoff =
      cfg.min_doc_frequency * static_cast<double>(docs.size()) - 1e-9;
  CountMatrix m;
  for (const auto& [term, df] : doc_frequency) {
    if (static_cast<double>(df) >= cutoff) m.terms.push_back(term);
  }
  if (m.terms.empty() && !docs.empty())
    throw EmptyVocabulary("document-frequency filter removed every term");

  m.docs.reserve(docs.size());
  for (const auto& [label, _] : docs) m.docs.push_back(label);
  m.counts.assign(m.docs.size() * m.terms.size(), 0);
  std::unordered_map<std::string, std::size_t> term_index;
  for (std::size_t j = 0; j < m.terms.size(); ++j) term_index[m.terms[j]] = j;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& [term, n] : doc_counts[i]) {
      auto it = term_index.find(term);
      if (it != term_index.end()) m.at(i, it->second) = n;
    }
  }
  return m;
}

// Top-n terms by total count over a document subset; ties go lexicographic.
// Counts are emitted so a renderer can scale font size proportionally.
inline std::vector<std::pair<std::string, std::uint64_t>> top_terms(
    const CountMatrix& m, const std::vector<std::string>& doc_subset,
    std::size_t n) {
  if (n < 1) throw InvariantViolation("top_terms: n must be >= 1");
  if (doc_subset.empty()) throw EmptySelection("top_terms: empty document subset");
  std::vector<std::uint64_t> totals(m.n_terms(), 0);
  for (const auto& label : doc_subset) {
    const std::size_t i = m.doc_index(label);
    for (std::size_t j = 0; j < m.n_terms(); ++j) totals[j] += m.at(i, j);
  }
  std::vector<std::size_t> order(m.n_terms());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (totals[a] != totals[b]) return totals[a] > totals[b];
    return m.terms[a] < m.terms[b];
  });
  std::vector<std::pair<std::string, std::uint64_t>> out;
  for (std::size_t k = 0; k < order.size() && k < n; ++k) {
    out.emplace_back(m.terms[order[k]], totals[order[k]]);
  }
  return out;
}

// ---- serialization ----------------------------------------------------
//
// Dense:  header "doc" <term...>, then one row per document label.
// Sparse: header "doc" "term" "count", one nonzero cell per line.

inline std::string matrix_to_tsv(const CountMatrix& m) {
  std::vector<std::string> header = {"doc"};
  header.insert(header.end(), m.terms.begin(), m.terms.end());
  std::string out = tsv::join_row(header);
  for (std::size_t i = 0; i < m.n_docs(); ++i) {
    std::vector<std::string> row = {m.docs[i]};
    for (std::size_t j = 0; j < m.n_terms(); ++j)
      row.push_back(std::to_string(m.at(i, j)));
    out += tsv::join_row(row);
  }
  return out;
}

inline std::string matrix_to_sparse_tsv(const CountMatrix& m) {
  std::string out = tsv::join_row({"doc", "term", "count"});
  for (std::size_t i = 0; i < m.n_docs(); ++i) {
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
      if (const auto c = m.at(i, j); c != 0)
        out += tsv::join_row({m.docs[i], m.terms[j], std::to_string(c)});
    }
  }
  return out;
}

inline CountMatrix matrix_from_tsv(const std::string& content,
                                   const std::string& origin) {
  const auto lines = tsv::split_lines(content);
  if (lines.empty()) throw Error(origin + ": empty matrix file");
  const auto header = tsv::split_row(lines[0]);
  if (header.empty() || header[0] != "doc")
    throw Error(origin + ": matrix header must start with 'doc'");

  CountMatrix m;
  if (header.size() == 3 && header[1] == "term" && header[2] == "count") {
    // Sparse triplets. Terms sort lexicographic, docs keep first-seen order.
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> cells;
    std::set<std::string> term_set;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = tsv::split_row(lines[i]);
      if (f.size() != 3) throw Error(origin + ": bad sparse row " + std::to_string(i + 1));
      cells.emplace_back(f[0], f[1], std::stoull(f[2]));
      term_set.insert(f[1]);
      if (std::find(m.docs.begin(), m.docs.end(), f[0]) == m.docs.end())
        m.docs.push_back(f[0]);
    }
    m.terms.assign(term_set.begin(), term_set.end());
    m.counts.assign(m.n_docs() * m.n_terms(), 0);
    std::unordered_map<std::string, std::size_t> di, ti;
    for (std::size_t i = 0; i < m.docs.size(); ++i) di[m.docs[i]] = i;
    for (std::size_t j = 0; j < m.terms.size(); ++j) ti[m.terms[j]] = j;
    for (const auto& [doc, term, count] : cells)
      m.at(di[doc], ti[term]) += count;
    return m;
  }

  m.terms.assign(header.begin() + 1, header.end());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = tsv::split_row(lines[i]);
    if (f.size() != header.size())
      throw Error(origin + ": row " + std::to_string(i + 1) + " has " +
                  std::to_string(f.size()) + " fields, header has " +
                  std::to_string(header.size()));
    m.docs.push_back(f[0]);
    for (std::size_t j = 1; j < f.size(); ++j)
      m.counts.push_back(std::stoull(f[j]));
  }
  return m;
}

inline CountMatrix load_matrix(const std::string& path) {
  // Truth sidecars from the synthetic generators must never feed a fit.
  if (path.find(".truth.") != std::string::npos ||
      path.find("/truth/") != std::string::npos)
    throw Error("refusing to load synthetic truth file as data: " + path);
  return matrix_from_tsv(tsv::read_file(path), path);
}

}  // namespace hansard
