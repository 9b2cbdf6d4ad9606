#include <catch2/catch_amalgamated.hpp>

#include "hansard/dtm.hpp"
#include "test_util.hpp"

using namespace hansard;

namespace {

PreprocessConfig full_cfg() {
  PreprocessConfig cfg;
  cfg.stopword_list = {"and"};
  return cfg;
}

}  // namespace

TEST_CASE("tokenize applies the full cleaning recipe") {
  CHECK(tokenize("Tax, tax and 3 taxes.", full_cfg()) ==
        std::vector<std::string>{"tax", "tax", "taxes"});
}

TEST_CASE("tokenizing nothing yields nothing") {
  CHECK(tokenize("", full_cfg()).empty());
  CHECK(tokenize("   \n\t ", full_cfg()).empty());
}

TEST_CASE("stopwords absorb every case variant when lowercasing") {
  CHECK(tokenize("AND And and", full_cfg()).empty());
}

TEST_CASE("hyphenated words split on the hyphen") {
  CHECK(tokenize("social-welfare scheme", full_cfg()) ==
        std::vector<std::string>{"social", "welfare", "scheme"});
}

TEST_CASE("combining accents compose before tokenizing") {
  // "Sea'n" written with a combining acute equals the precomposed form.
  const std::string combining = "Seán";
  const std::string precomposed = "Seán";
  PreprocessConfig cfg;
  CHECK(tokenize(combining, cfg) == tokenize(precomposed, cfg));
}

TEST_CASE("digit-bearing tokens drop entirely when stripping numbers") {
  PreprocessConfig cfg;
  CHECK(tokenize("budget 2008 3rd p2p euro", cfg) ==
        std::vector<std::string>{"budget", "euro"});
  cfg.strip_numbers = false;
  CHECK(tokenize("budget 2008", cfg) ==
        std::vector<std::string>{"budget", "2008"});
}

TEST_CASE("document frequency boundary follows the strict reading") {
  PreprocessConfig cfg;
  cfg.min_doc_frequency = 0.2;

  // 5 docs, term in exactly 1: 1 >= 0.2*5, retained.
  std::vector<std::pair<std::string, std::string>> five;
  five.emplace_back("d1", "rare shared");
  for (int i = 2; i <= 5; ++i)
    five.emplace_back("d" + std::to_string(i), "shared");
  const CountMatrix m5 = build_matrix(five, cfg);
  CHECK(std::find(m5.terms.begin(), m5.terms.end(), "rare") != m5.terms.end());

  // 10 docs, term in exactly 1: 1 < 2, removed; in exactly 2: retained.
  std::vector<std::pair<std::string, std::string>> ten;
  ten.emplace_back("d1", "rare duo shared");
  ten.emplace_back("d2", "duo shared");
  for (int i = 3; i <= 10; ++i)
    ten.emplace_back("d" + std::to_string(i), "shared");
  const CountMatrix m10 = build_matrix(ten, cfg);
  CHECK(std::find(m10.terms.begin(), m10.terms.end(), "rare") == m10.terms.end());
  CHECK(std::find(m10.terms.begin(), m10.terms.end(), "duo") != m10.terms.end());
}

TEST_CASE("duplicate document labels are rejected") {
  PreprocessConfig cfg;
  REQUIRE_THROWS_AS(build_matrix({{"d", "a b"}, {"d", "c d"}}, cfg),
                    DuplicateLabel);
}

TEST_CASE("filtering everything away is EmptyVocabulary") {
  PreprocessConfig cfg;
  cfg.min_doc_frequency = 1.0;
  REQUIRE_THROWS_AS(build_matrix({{"d1", "unique"}, {"d2", "different"}}, cfg),
                    EmptyVocabulary);
}

TEST_CASE("identical documents produce identical rows") {
  PreprocessConfig cfg;
  const CountMatrix m = build_matrix(
      {{"d1", "alpha beta beta"}, {"d2", "alpha beta beta"}, {"d3", "alpha beta beta"}},
      cfg);
  for (std::size_t j = 0; j < m.n_terms(); ++j)
    CHECK(m.at(0, j) == m.at(1, j));
  CHECK(m.row_sum(0) == 3);
}

TEST_CASE("count conservation: row sums equal surviving tokens") {
  PreprocessConfig cfg;
  cfg.stopword_list = {"the", "of"};
  cfg.min_doc_frequency = 0.5;
  const std::vector<std::pair<std::string, std::string>> docs = {
      {"d1", "the tax of spending tax unique1"},
      {"d2", "tax spending the spending"},
      {"d3", "tax welfare welfare of"},
      {"d4", "spending tax the tax"}};
  const CountMatrix m = build_matrix(docs, cfg);
  const std::set<std::string> vocab(m.terms.begin(), m.terms.end());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::uint64_t surviving = 0;
    for (const auto& tok : tokenize(docs[i].second, cfg))
      if (vocab.count(tok)) ++surviving;
    CHECK(m.row_sum(i) == surviving);
  }
}

TEST_CASE("raising min_doc_frequency never grows the vocabulary") {
  const std::vector<std::pair<std::string, std::string>> docs = {
      {"d1", "a b c d e"}, {"d2", "a b c"}, {"d3", "a b x"},
      {"d4", "a y z"},     {"d5", "a b c d"}};
  PreprocessConfig cfg;
  std::size_t prev = SIZE_MAX;
  for (double mdf : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    cfg.min_doc_frequency = mdf;
    std::size_t size;
    try {
      size = build_matrix(docs, cfg).n_terms();
    } catch (const EmptyVocabulary&) {
      size = 0;
    }
    CHECK(size <= prev);
    prev = size;
  }
}

TEST_CASE("matrix serialization is deterministic and round-trips") {
  PreprocessConfig cfg;
  const CountMatrix m = build_matrix(
      {{"d1", "tax tax spending"}, {"d2", "welfare spending"}}, cfg);
  const std::string once = matrix_to_tsv(m);
  const std::string twice = matrix_to_tsv(
      build_matrix({{"d1", "tax tax spending"}, {"d2", "welfare spending"}}, cfg));
  CHECK(once == twice);

  const CountMatrix back = matrix_from_tsv(once, "test");
  CHECK(back.docs == m.docs);
  CHECK(back.terms == m.terms);
  CHECK(back.counts == m.counts);

  // Sparse triplets carry the same cells.
  const CountMatrix sparse = matrix_from_tsv(matrix_to_sparse_tsv(m), "test");
  for (std::size_t i = 0; i < m.n_docs(); ++i) {
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
      const auto& term = m.terms[j];
      const auto it = std::find(sparse.terms.begin(), sparse.terms.end(), term);
      if (m.at(i, j) == 0) continue;
      REQUIRE(it != sparse.terms.end());
      const std::size_t sj = static_cast<std::size_t>(it - sparse.terms.begin());
      CHECK(sparse.at(sparse.doc_index(m.docs[i]), sj) == m.at(i, j));
    }
  }
}

TEST_CASE("terms are ordered lexicographically") {
  PreprocessConfig cfg;
  const CountMatrix m =
      build_matrix({{"d1", "zebra apple mango"}, {"d2", "apple zebra"}}, cfg);
  CHECK(std::is_sorted(m.terms.begin(), m.terms.end()));
}

TEST_CASE("top_terms ranks by count with lexicographic ties") {
  PreprocessConfig cfg;
  const CountMatrix m = build_matrix(
      {{"d1", "tax tax tax welfare welfare spending"},
       {"d2", "tax welfare spending spending"}},
      cfg);
  const auto top = top_terms(m, m.docs, 10);
  REQUIRE(top.size() == 3);
  CHECK(top[0] == std::make_pair(std::string("tax"), std::uint64_t{4}));
  // spending and welfare tie at 3; lexicographic order breaks it.
  CHECK(top[1].first == "spending");
  CHECK(top[2].first == "welfare");
}

TEST_CASE("top_terms truncates at the vocabulary size") {
  PreprocessConfig cfg;
  const CountMatrix m = build_matrix({{"d1", "a b"}, {"d2", "a"}}, cfg);
  CHECK(top_terms(m, m.docs, 100).size() == m.n_terms());
}

TEST_CASE("top_terms rejects an empty selection") {
  PreprocessConfig cfg;
  const CountMatrix m = build_matrix({{"d1", "a b"}, {"d2", "a"}}, cfg);
  REQUIRE_THROWS_AS(top_terms(m, {}, 5), EmptySelection);
  REQUIRE_THROWS_AS(top_terms(m, m.docs, 0), InvariantViolation);
}

TEST_CASE("truth sidecars are refused as estimation input") {
  testutil::TempDir tmp("truth");
  testutil::spit(tmp.file("truth/m.truth.tsv"), "doc\tx\n");
  testutil::spit(tmp.file("m.tsv"), "doc\ta\nd1\t1\nd2\t2\n");
  REQUIRE_THROWS_WITH(load_matrix(tmp.file("truth/m.truth.tsv")),
                      Catch::Matchers::ContainsSubstring("truth"));
  CHECK_NOTHROW(load_matrix(tmp.file("m.tsv")));
}
