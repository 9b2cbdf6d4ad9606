#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hansard/dtm.hpp"
#include "hansard/random.hpp"
#include "hansard/wordscore.hpp"

using namespace hansard;

namespace {

CountMatrix matrix_of(const std::vector<std::pair<std::string, std::string>>& docs) {
  PreprocessConfig cfg;
  return build_matrix(docs, cfg);
}

std::size_t term_at(const CountMatrix& m, const std::string& term) {
  for (std::size_t j = 0; j < m.n_terms(); ++j)
    if (m.terms[j] == term) return j;
  FAIL("term not found: " << term);
  return 0;
}

}  // namespace

TEST_CASE("hand-computed scores on the taxes/spending/welfare example") {
  const CountMatrix m = matrix_of({{"R1", "taxes taxes spending"},
                                   {"R2", "spending spending welfare"},
                                   {"V", "taxes spending"}});
  const WordscoreFit fit = wordscore_fit(m, {{"R1", -1.0}, {"R2", 1.0}});

  CHECK_THAT(fit.word_scores[term_at(m, "taxes")],
             Catch::Matchers::WithinAbs(-1.0, 1e-12));
  CHECK_THAT(fit.word_scores[term_at(m, "spending")],
             Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
  CHECK_THAT(fit.word_scores[term_at(m, "welfare")],
             Catch::Matchers::WithinAbs(1.0, 1e-12));

  REQUIRE(fit.virgin_docs == std::vector<std::string>{"V"});
  CHECK_THAT(fit.virgin_raw[0], Catch::Matchers::WithinAbs(-1.0 / 3.0, 1e-12));
}

TEST_CASE("a virgin that copies one reference scores at that pole") {
  const CountMatrix m = matrix_of({{"R1", "taxes taxes levies"},
                                   {"R2", "spending spending welfare"},
                                   {"V", "taxes taxes levies"}});
  const WordscoreFit fit = wordscore_fit(m, {{"R1", -1.0}, {"R2", 1.0}});
  CHECK_THAT(fit.virgin_raw[0], Catch::Matchers::WithinAbs(-1.0, 1e-12));
}

TEST_CASE("identical reference scores are degenerate") {
  const CountMatrix m = matrix_of({{"R1", "a b"}, {"R2", "b c"}, {"V", "a"}});
  REQUIRE_THROWS_AS(wordscore_fit(m, {{"R1", 1.0}, {"R2", 1.0}}),
                    DegenerateReferences);
  REQUIRE_THROWS_AS(wordscore_fit(m, {{"R1", 1.0}}), DegenerateReferences);
}

TEST_CASE("a virgin with no scored words is flagged, not fatal") {
  const CountMatrix m = matrix_of(
      {{"R1", "alpha beta"}, {"R2", "beta gamma"}, {"V", "omicron omicron"}});
  const WordscoreFit fit = wordscore_fit(m, {{"R1", -1.0}, {"R2", 1.0}});
  REQUIRE(fit.virgin_docs == std::vector<std::string>{"V"});
  CHECK_FALSE(fit.virgin_overlap[0]);
  CHECK(std::isnan(fit.virgin_raw[0]));

  const std::string tsv = wordscore_docs_tsv(fit);
  CHECK(tsv.find("nan") != std::string::npos);
}

TEST_CASE("scores and raw positions stay inside the reference interval") {
  DetRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<std::string, std::string>> docs;
    const std::size_t n_docs = 3 + rng.below(4);
    static const char* vocab[] = {"wa", "wb", "wc", "wd", "we", "wf",
                                  "wg", "wh", "wi", "wj", "wk", "wl"};
    for (std::size_t d = 0; d < n_docs; ++d) {
      std::string text;
      const std::size_t len = 1 + rng.below(30);
      for (std::size_t k = 0; k < len; ++k) {
        text += vocab[rng.below(12)];
        text.push_back(' ');
      }
      docs.emplace_back("d" + std::to_string(d), text);
    }
    const CountMatrix m = matrix_of(docs);
    const double lo = -2.0 + rng.u01(), hi = 1.0 + rng.u01();
    const WordscoreFit fit = wordscore_fit(m, {{"d0", lo}, {"d1", hi}});
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
      if (!fit.scored[j]) continue;
      CHECK(fit.word_scores[j] >= lo - 1e-12);
      CHECK(fit.word_scores[j] <= hi + 1e-12);
    }
    for (std::size_t v = 0; v < fit.virgin_docs.size(); ++v) {
      if (!fit.virgin_overlap[v]) continue;
      CHECK(fit.virgin_raw[v] >= lo - 1e-12);
      CHECK(fit.virgin_raw[v] <= hi + 1e-12);
    }
  }
}

TEST_CASE("two references at -1/+1 reduce to the frequency-ratio identity") {
  DetRng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    CountMatrix m;
    m.docs = {"R1", "R2"};
    const std::size_t T = 2 + rng.below(10);
    m.terms.resize(T);
    for (std::size_t j = 0; j < T; ++j) m.terms[j] = "t" + std::to_string(j);
    m.counts.resize(2 * T);
    for (auto& c : m.counts) c = rng.below(9);
    // Both rows need tokens.
    m.counts[0] += 1;
    m.counts[T] += 1;
    const WordscoreFit fit = wordscore_fit(m, {{"R1", -1.0}, {"R2", 1.0}});
    const double s1 = static_cast<double>(m.row_sum(0));
    const double s2 = static_cast<double>(m.row_sum(1));
    for (std::size_t j = 0; j < T; ++j) {
      const double f1 = static_cast<double>(m.at(0, j)) / s1;
      const double f2 = static_cast<double>(m.at(1, j)) / s2;
      if (f1 + f2 <= 0.0) {
        CHECK_FALSE(fit.scored[j]);
        continue;
      }
      CHECK_THAT(fit.word_scores[j],
                 Catch::Matchers::WithinAbs((f2 - f1) / (f1 + f2), 1e-12));
    }
  }
}

TEST_CASE("duplicating a virgin's text does not move its raw score") {
  const CountMatrix once = matrix_of({{"R1", "taxes taxes spending"},
                                      {"R2", "spending welfare welfare"},
                                      {"V", "taxes spending welfare"}});
  const CountMatrix twice = matrix_of(
      {{"R1", "taxes taxes spending"},
       {"R2", "spending welfare welfare"},
       {"V", "taxes spending welfare taxes spending welfare"}});
  const auto a = wordscore_fit(once, {{"R1", -1.0}, {"R2", 1.0}});
  const auto b = wordscore_fit(twice, {{"R1", -1.0}, {"R2", 1.0}});
  CHECK_THAT(a.virgin_raw[0], Catch::Matchers::WithinAbs(b.virgin_raw[0], 1e-12));
}

TEST_CASE("affine rescaling maps the virgin mean and spread onto the references") {
  const CountMatrix m = matrix_of({{"R1", "taxes taxes spending levies"},
                                   {"R2", "spending welfare welfare grants"},
                                   {"V1", "taxes spending"},
                                   {"V2", "welfare spending spending"},
                                   {"V3", "taxes welfare levies"}});
  const WordscoreFit fit = wordscore_fit(m, {{"R1", -1.0}, {"R2", 1.0}});
  double mean = 0.0, var = 0.0;
  for (double v : fit.virgin_rescaled) mean += v;
  mean /= 3.0;
  for (double v : fit.virgin_rescaled) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / 3.0);
  // Reference scores {-1, +1}: mean 0, population sd 1.
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(sd, Catch::Matchers::WithinAbs(1.0, 1e-12));

  // The identity transform is selectable and leaves raw scores alone.
  const WordscoreFit id = wordscore_fit(m, {{"R1", -1.0}, {"R2", 1.0}}, {},
                                        WordscoreRescale::Identity);
  for (std::size_t v = 0; v < id.virgin_docs.size(); ++v)
    CHECK(id.virgin_rescaled[v] == id.virgin_raw[v]);
}
