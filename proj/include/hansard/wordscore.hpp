#pragma once

#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hansard/dtm.hpp"
#include "hansard/errors.hpp"
#include "hansard/tsv.hpp"
#include "hansard/wordfish.hpp"  // format_real

// Reference-text scaling. Words are scored from documents with known
// positions; unseen ("virgin") documents score as the average of their
// word scores weighted by relative frequency over scored words only.

namespace hansard {

enum class WordscoreRescale { Affine, Identity };

struct WordscoreFit {
  std::vector<std::string> reference_docs;
  std::vector<double> reference_scores;

  std::vector<std::string> terms;     // matrix vocabulary
  std::vector<double> word_scores;    // defined where scored[j]
  std::vector<bool> scored;           // term occurs in at least one reference

  std::vector<std::string> virgin_docs;
  std::vector<double> virgin_raw;       // NaN where no overlap
  std::vector<double> virgin_rescaled;  // NaN where no overlap
  std::vector<bool> virgin_overlap;     // false = flagged, no scored word
};

// refs: (document label, assigned position). virgins defaults to every
// other document in the matrix when empty.
inline WordscoreFit wordscore_fit(const CountMatrix& m,
                                  const std::vector<std::pair<std::string, double>>& refs,
                                  std::vector<std::string> virgins = {},
                                  WordscoreRescale rescale = WordscoreRescale::Affine) {
  if (refs.size() < 2)
    throw DegenerateReferences("need at least 2 reference documents, got " +
                               std::to_string(refs.size()));
  {
    const double first = refs.front().second;
    bool distinct = false;
    for (const auto& [_, a] : refs) {
      if (a != first) distinct = true;
    }
    if (!distinct)
      throw DegenerateReferences("reference scores are all equal; the "
                                 "dimension has no direction");
  }

  WordscoreFit fit;
  fit.terms = m.terms;
  std::vector<std::size_t> ref_rows;
  std::set<std::string> ref_labels;
  for (const auto& [label, score] : refs) {
    const std::size_t row = m.doc_index(label);
    if (!ref_labels.insert(label).second)
      throw DegenerateReferences("reference '" + label + "' listed twice");
    if (m.row_sum(row) == 0)
      throw Error("reference document '" + label + "' has no tokens");
    ref_rows.push_back(row);
    fit.reference_docs.push_back(label);
    fit.reference_scores.push_back(score);
  }
  if (virgins.empty()) {
    for (const auto& d : m.docs) {
      if (!ref_labels.count(d)) virgins.push_back(d);
    }
  }

  const std::size_t R = ref_rows.size(), T = m.n_terms();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // Relative frequency of each word within each reference, then
  // P(r|w) = F_wr / sum_r F_wr and S_w = sum_r P(r|w) * A_r.
  std::vector<double> rowsum(R);
  for (std::size_t r = 0; r < R; ++r)
    rowsum[r] = static_cast<double>(m.row_sum(ref_rows[r]));
  fit.word_scores.assign(T, nan);
  fit.scored.assign(T, false);
  for (std::size_t j = 0; j < T; ++j) {
    double f_total = 0.0, score = 0.0;
    for (std::size_t r = 0; r < R; ++r)
      f_total += static_cast<double>(m.at(ref_rows[r], j)) / rowsum[r];
    if (f_total <= 0.0) continue;
    for (std::size_t r = 0; r < R; ++r) {
      const double f = static_cast<double>(m.at(ref_rows[r], j)) / rowsum[r];
      score += (f / f_total) * fit.reference_scores[r];
    }
    fit.word_scores[j] = score;
    fit.scored[j] = true;
  }

  // Virgin raw score: relative frequencies renormalized over scored words.
  for (const auto& label : virgins) {
    const std::size_t row = m.doc_index(label);
    double scored_tokens = 0.0;
    for (std::size_t j = 0; j < T; ++j)
      if (fit.scored[j]) scored_tokens += static_cast<double>(m.at(row, j));
    fit.virgin_docs.push_back(label);
    if (scored_tokens <= 0.0) {
      fit.virgin_raw.push_back(nan);
      fit.virgin_overlap.push_back(false);
      continue;
    }
    double raw = 0.0;
    for (std::size_t j = 0; j < T; ++j) {
      if (!fit.scored[j]) continue;
      raw += (static_cast<double>(m.at(row, j)) / scored_tokens) *
             fit.word_scores[j];
    }
    fit.virgin_raw.push_back(raw);
    fit.virgin_overlap.push_back(true);
  }

  // Rescaling to the reference metric: an affine map sending the mean and
  // spread of the raw virgin scores to the mean and spread of the
  // reference scores. Falls back to the identity when the raw scores
  // carry no spread to map.
  fit.virgin_rescaled.assign(fit.virgin_raw.size(), nan);
  if (rescale == WordscoreRescale::Identity) {
    fit.virgin_rescaled = fit.virgin_raw;
    return fit;
  }
  std::vector<double> usable;
  for (std::size_t v = 0; v < fit.virgin_raw.size(); ++v)
    if (fit.virgin_overlap[v]) usable.push_back(fit.virgin_raw[v]);
  if (usable.size() < 2) {
    fit.virgin_rescaled = fit.virgin_raw;
    return fit;
  }
  const double raw_mean = wf_detail::mean_of(usable);
  const double raw_sd = wf_detail::population_sd(usable, raw_mean);
  const double ref_mean = wf_detail::mean_of(fit.reference_scores);
  const double ref_sd =
      wf_detail::population_sd(fit.reference_scores, ref_mean);
  if (raw_sd < 1e-15) {
    fit.virgin_rescaled = fit.virgin_raw;
    return fit;
  }
  for (std::size_t v = 0; v < fit.virgin_raw.size(); ++v) {
    if (!fit.virgin_overlap[v]) continue;
    fit.virgin_rescaled[v] =
        (fit.virgin_raw[v] - raw_mean) / raw_sd * ref_sd + ref_mean;
  }
  return fit;
}

inline std::string wordscore_terms_tsv(const WordscoreFit& fit) {
  std::string out = tsv::join_row({"term", "word_score"});
  for (std::size_t j = 0; j < fit.terms.size(); ++j) {
    if (!fit.scored[j]) continue;
    out += tsv::join_row({fit.terms[j], format_real(fit.word_scores[j])});
  }
  return out;
}

inline std::string wordscore_docs_tsv(const WordscoreFit& fit) {
  std::string out = tsv::join_row({"doc", "raw", "rescaled"});
  for (std::size_t v = 0; v < fit.virgin_docs.size(); ++v) {
    out += tsv::join_row({fit.virgin_docs[v],
                          fit.virgin_overlap[v] ? format_real(fit.virgin_raw[v]) : "nan",
                          fit.virgin_overlap[v] ? format_real(fit.virgin_rescaled[v]) : "nan"});
  }
  return out;
}

}  // namespace hansard
