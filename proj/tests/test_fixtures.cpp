#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hansard/fixtures.hpp"
#include "hansard/pipeline.hpp"
#include "test_util.hpp"

using namespace hansard;

TEST_CASE("all-zero word weights are a degenerate spec") {
  SyntheticSpec spec;
  spec.beta_sd = 0.0;
  REQUIRE_THROWS_AS(generate_wordfish_corpus(spec), DegenerateSpec);
}

TEST_CASE("generation is reproducible from the seed") {
  SyntheticSpec spec;  // 20 x 100, seed 42
  const SyntheticCorpus a = generate_wordfish_corpus(spec);
  const SyntheticCorpus b = generate_wordfish_corpus(spec);
  CHECK(matrix_to_tsv(a.matrix) == matrix_to_tsv(b.matrix));
  CHECK(truth_tsv(a) == truth_tsv(b));

  spec.seed = 43;
  const SyntheticCorpus c = generate_wordfish_corpus(spec);
  CHECK(matrix_to_tsv(a.matrix) != matrix_to_tsv(c.matrix));
}

TEST_CASE("true positions are standardized") {
  SyntheticSpec spec;
  const SyntheticCorpus c = generate_wordfish_corpus(spec);
  double mean = 0.0;
  for (double w : c.true_omega) mean += w;
  mean /= static_cast<double>(c.true_omega.size());
  double var = 0.0;
  for (double w : c.true_omega) var += (w - mean) * (w - mean);
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::sqrt(var / static_cast<double>(c.true_omega.size())),
             Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("seeded Poisson draws obey the law of large numbers") {
  // The sampler behind the generator: cell means over 1000 seeded
  // replicates stay within 3 * sqrt(lambda / 1000) of lambda.
  const int replicates = 1000;
  for (const double lambda : {0.4, 2.0, 7.5, 25.0, 90.0}) {
    double sum = 0.0;
    for (int r = 0; r < replicates; ++r) {
      DetRng rng(1000 + static_cast<std::uint64_t>(r));
      sum += static_cast<double>(rng.poisson(lambda));
    }
    const double mean = sum / replicates;
    CHECK_THAT(mean, Catch::Matchers::WithinAbs(
                         lambda, 3.0 * std::sqrt(lambda / replicates)));
  }
}

TEST_CASE("debate fixture mirrors the published roster") {
  const DebateFixture f = debate_fixture();
  REQUIRE(f.speakers.size() == 22);
  REQUIRE(f.speeches.size() == 22);

  std::size_t government = 0, opposition = 0;
  for (const auto& s : f.speakers) {
    if (s.government) {
      ++government;
      CHECK((s.party == "FF" || s.party == "Green"));
    } else {
      ++opposition;
    }
  }
  CHECK(government == 10);
  CHECK(opposition == 12);

  auto words_of = [&](const std::string& name) -> std::uint64_t {
    for (std::size_t i = 0; i < f.speakers.size(); ++i) {
      if (f.speakers[i].full_name == name)
        return simple_word_count(f.speeches[i]);
    }
    FAIL("missing speaker " << name);
    return 0;
  };
  CHECK(words_of("Brian Cowen") == 8733);
  CHECK(words_of("Richard Bruton") == 10817);
  CHECK(words_of("Bertie Ahern") == 3959);

  // Exact counts for every speaker, not just the spot checks.
  for (std::size_t i = 0; i < f.speakers.size(); ++i)
    CHECK(simple_word_count(f.speeches[i]) == f.speakers[i].words);

  // Regeneration is byte-identical.
  const DebateFixture again = debate_fixture();
  CHECK(f.speeches == again.speeches);
}

TEST_CASE("cabinet fixture: spending correlates -0.95 with true positions") {
  const MinisterFixture f = minister_fixture();
  REQUIRE(f.ministers.size() == 14);
  REQUIRE(f.high_spending_departments.size() == 8);
  REQUIRE(f.spending.size() == 14);

  std::map<std::string, double> share;
  for (const auto& [dept, s] : f.spending) share[dept] = s;
  double high_total = 0.0;
  for (const auto& dept : f.high_spending_departments)
    high_total += share.at(dept);
  CHECK_THAT(high_total, Catch::Matchers::WithinAbs(0.95, 1e-9));
  for (const auto& [dept, s] : f.spending) CHECK(s > 0.0);

  // Correlation of the eight high-spending shares with the true positions.
  std::vector<double> x, y;
  for (std::size_t i = 0; i < f.ministers.size(); ++i) {
    if (!f.ministers[i].high_spending) continue;
    x.push_back(f.corpus.true_omega[i]);
    y.push_back(share.at(f.ministers[i].department));
  }
  REQUIRE(x.size() == 8);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= 8.0;
  my /= 8.0;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  CHECK_THAT(sxy / std::sqrt(sxx * syy),
             Catch::Matchers::WithinAbs(-0.95, 1e-9));

  // Doc labels are member ids, join covers every minister.
  for (const auto& m : f.ministers) {
    CHECK(f.join.count(m.member_id) == 1);
    CHECK(std::find(f.corpus.matrix.docs.begin(), f.corpus.matrix.docs.end(),
                    m.member_id) != f.corpus.matrix.docs.end());
  }
}

TEST_CASE("budget fixture is reproducible and well-formed") {
  const BudgetFixture a = budget_speeches_fixture();
  const BudgetFixture b = budget_speeches_fixture();
  REQUIRE(a.speeches.size() == b.speeches.size());
  for (std::size_t i = 0; i < a.speeches.size(); ++i) {
    CHECK(a.speeches[i].text == b.speeches[i].text);
    CHECK(simple_word_count(a.speeches[i].text) >= 300);
  }
}

TEST_CASE("fixture register has unique ids covering all fixtures") {
  const auto members = fixture_register();
  std::set<std::string> ids;
  for (const auto& m : members) {
    CHECK(ids.insert(m.member_id).second);
    CHECK_FALSE(m.canonical_name.empty());
  }
  for (const auto& s : debate_fixture().speakers) CHECK(ids.count(s.member_id));
  for (const auto& m : minister_fixture().ministers) CHECK(ids.count(m.member_id));
}

TEST_CASE("demo fixture files regenerate byte-identically") {
  testutil::TempDir tmp("fixgen");
  write_demo_fixtures(tmp.file("one"));
  write_demo_fixtures(tmp.file("two"));
  namespace fs = std::filesystem;
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(tmp.file("one"))) {
    if (!entry.is_regular_file()) continue;
    const std::string rel =
        fs::relative(entry.path(), tmp.file("one")).string();
    CHECK(testutil::slurp(entry.path().string()) ==
          testutil::slurp(tmp.file("two") + "/" + rel));
    ++compared;
  }
  CHECK(compared > 20);
}
