#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hansard/corpus.hpp"
#include "hansard/dtm.hpp"
#include "hansard/fixtures.hpp"
#include "hansard/ingest.hpp"
#include "hansard/linkage.hpp"
#include "hansard/stats.hpp"
#include "hansard/tsv.hpp"
#include "hansard/wordfish.hpp"
#include "hansard/wordscore.hpp"

// End-to-end demonstration over the bundled fixtures: transcripts are
// written out, ingested, linked against the register, and fed through the
// three applications (per-minister frequency tables, reference scoring of
// the budget debate, position scaling of the cabinet validated against
// spending shares). Everything lands under one output directory.

namespace hansard {

namespace fs = std::filesystem;

// Assembles (label, text) documents from contributions. Contributions
// shorter than cfg.min_tokens cleaned tokens count as interjections and
// are dropped. Grouping by member concatenates a member's texts in query
// order; unlinked rows group under their printed name.
inline std::vector<std::pair<std::string, std::string>> assemble_documents(
    const std::vector<Contribution>& rows, bool group_by_member,
    const PreprocessConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> docs;
  std::map<std::string, std::string> grouped;
  for (const auto& c : rows) {
    if (tokenize(c.text, cfg).size() < cfg.min_tokens) continue;
    if (group_by_member) {
      std::string key =
          c.member_id ? *c.member_id : "unlinked:" + c.speaker_raw;
      std::string& text = grouped[key];
      if (!text.empty()) text.push_back('\n');
      text += c.text;
    } else {
      docs.emplace_back("c" + std::to_string(c.contribution_id), c.text);
    }
  }
  for (auto& [label, text] : grouped) docs.emplace_back(label, std::move(text));
  return docs;
}

// ---- fixture materialization ---------------------------------------------

namespace demo_detail {

inline std::string prose_date(const CalendarDate& d) {
  static const char* months[] = {"January",   "February", "March",    "April",
                                 "May",       "June",     "July",     "August",
                                 "September", "October",  "November", "December"};
  return std::to_string(d.day) + " " + months[d.month - 1] + " " +
         std::to_string(d.year);
}

inline std::string transcript_header(const CalendarDate& date) {
  return "<html>\n<p>Dáil Éireann, " + prose_date(date) + ".</p>\n";
}

// The printed speaker line for a fixture member: honorific plus the full
// name, with the accented form where one exists.
inline std::string printed_name(const std::string& full_name) {
  static const std::map<std::string, std::string> accented = {
      {"Roisin Shortall", "Róisín Shortall"},
      {"Caoimhghin O'Caolain", "Caoimhghín Ó Caoláin"},
      {"Eamon O'Cuiv", "Éamon Ó Cuív"},
      {"Micheal Martin", "Micheál Martin"},
      {"Seamus Brennan", "Séamus Brennan"},
      {"Sean Ardagh", "Seán Ardagh"},
      {"Sean MacEntee", "Seán MacEntee"},
  };
  auto it = accented.find(full_name);
  return it == accented.end() ? full_name : it->second;
}

inline std::string debate_transcript(const DebateFixture& f) {
  std::string out = transcript_header(f.date);
  out += "<h2>" + f.debate_title + "</h2>\n";
  for (std::size_t i = 0; i < f.speakers.size(); ++i) {
    const auto& s = f.speakers[i];
    std::string line;
    if (s.full_name == "Bertie Ahern") {
      line = "An Taoiseach (Mr. " + printed_name(s.full_name) + ")";
    } else if (s.full_name == "Brian Cowen") {
      line = "Minister for Finance (Mr. " + printed_name(s.full_name) + ")";
    } else {
      const bool ms = s.full_name == "Roisin Shortall";
      line = (ms ? "Ms. " : "Mr. ") + printed_name(s.full_name);
    }
    out += "<p>" + line + ": " + f.speeches[i] + "</p>\n";
    if (i == 9) out += "<p><i>(Interruptions).</i></p>\n";
  }
  out += "<p><i>The Dáil adjourned at 10.30 p.m.</i></p>\n</html>\n";
  return out;
}

// One transcript per minister: that minister's model-generated tokens
// spread over a handful of turns. The Taoiseach's turns print as a bare
// office so the demo exercises date-aware role resolution.
inline std::string minister_transcript(const MinisterFixture& f,
                                       std::size_t idx,
                                       const CalendarDate& date) {
  const auto& m = f.corpus.matrix;
  const CabinetMinister& minister = f.ministers[idx];
  std::vector<std::string> tokens;
  for (std::size_t j = 0; j < m.n_terms(); ++j) {
    for (std::uint64_t k = 0; k < m.at(idx, j); ++k) tokens.push_back(m.terms[j]);
  }
  DetRng rng(4400 + idx);
  rng.shuffle(tokens.begin(), tokens.end());

  std::string out = transcript_header(date);
  out += "<h2>" + f.debate_title + "</h2>\n";
  const std::size_t turns = 3;
  const std::size_t per = (tokens.size() + turns - 1) / turns;
  for (std::size_t t = 0; t < turns; ++t) {
    const std::size_t lo = t * per, hi = std::min(tokens.size(), lo + per);
    if (lo >= hi) break;
    std::string body;
    for (std::size_t k = lo; k < hi; ++k) {
      if (!body.empty()) body.push_back(' ');
      body += tokens[k];
    }
    const std::string line =
        minister.full_name == "Bertie Ahern"
            ? std::string("An Taoiseach")
            : (minister.full_name == "Mary Harney" ||
                       minister.full_name == "Mary Coughlan"
                   ? "Ms. " + printed_name(minister.full_name)
                   : "Mr. " + printed_name(minister.full_name));
    out += "<p>" + line + ": " + body + "</p>\n";
  }
  out += "</html>\n";
  return out;
}

inline std::string budget_transcript(const BudgetSpeech& s,
                                     const std::string& title) {
  std::string out = transcript_header(s.date);
  out += "<h2>" + title + "</h2>\n";
  out += "<p>Minister for Finance (Mr. " + printed_name(s.minister) + "): " +
         s.text + "</p>\n";
  out += "<p><i>The Dáil adjourned at 9 p.m.</i></p>\n</html>\n";
  return out;
}

}  // namespace demo_detail

// Writes the bundled fixture corpus: transcript files, members register,
// role assignments and the truth sidecars (under fixtures/truth/, which
// the loaders refuse to read as data).
inline void write_demo_fixtures(const std::string& fixture_dir) {
  const DebateFixture debate = debate_fixture();
  const MinisterFixture cabinet = minister_fixture();
  const BudgetFixture budget = budget_speeches_fixture();

  fs::create_directories(fixture_dir + "/transcripts");
  fs::create_directories(fixture_dir + "/truth");

  tsv::write_file(fixture_dir + "/transcripts/debate_2007-12-05.html",
                  demo_detail::debate_transcript(debate));
  for (std::size_t i = 0; i < cabinet.ministers.size(); ++i) {
    const CalendarDate date{2002 + static_cast<int>(i % 2), 7,
                            2 + static_cast<int>(i)};
    tsv::write_file(fixture_dir + "/transcripts/estimates_" +
                        cabinet.ministers[i].member_id + ".html",
                    demo_detail::minister_transcript(cabinet, i, date));
  }
  for (std::size_t k = 0; k < budget.speeches.size(); ++k) {
    const auto& s = budget.speeches[k];
    tsv::write_file(fixture_dir + "/transcripts/budget_" + s.member_id + "_" +
                        to_iso(s.date) + ".html",
                    demo_detail::budget_transcript(s, budget.debate_title));
  }

  CorpusStore::export_members_tsv(fixture_register(),
                                  fixture_dir + "/members.tsv");
  tsv::write_file(fixture_dir + "/role_assignments.tsv",
                  tsv::join_row({"role", "member_id", "active_from", "active_to"}) +
                      tsv::join_row({"An Taoiseach", "td-bertie-ahern",
                                     "1997-06-26", "2008-05-06"}));
  tsv::write_file(fixture_dir + "/spending_2004.tsv", [&] {
    std::string out = tsv::join_row({"label", "value"});
    for (const auto& [dept, share] : cabinet.spending)
      out += tsv::join_row({dept, format_real(share)});
    return out;
  }());
  tsv::write_file(fixture_dir + "/position_join.tsv", [&] {
    std::string out = tsv::join_row({"position_label", "series_label"});
    for (const auto& [member, dept] : cabinet.join)
      out += tsv::join_row({member, dept});
    return out;
  }());
  // Seeds behind every generator, for the record.
  tsv::write_file(fixture_dir + "/seeds.tsv",
                  tsv::join_row({"fixture", "seed"}) +
                      tsv::join_row({"debate_speeches", "20071205"}) +
                      tsv::join_row({"cabinet_corpus", "29264"}) +
                      tsv::join_row({"budget_speeches", "19230420"}));
  tsv::write_file(fixture_dir + "/truth/cabinet.truth.tsv",
                  truth_tsv(cabinet.corpus));
}

// ---- demo run -------------------------------------------------------------

struct DemoReport {
  std::size_t files = 0;
  std::size_t contributions = 0;
  std::uint64_t link_total = 0;
  std::uint64_t link_matched = 0;
  std::uint64_t link_ambiguous = 0;
  std::uint64_t link_unmatched = 0;

  std::string top_term;  // across all budget speeches
  std::uint64_t top_term_count = 0;

  double gov_low = 0.0, gov_high = 0.0;  // rescaled wordscore ranges
  double opp_low = 0.0, opp_high = 0.0;
  bool clusters_separated = false;

  bool wordfish_converged = false;
  int wordfish_iterations = 0;
  RegressionFit spending_all;
  RegressionFit spending_high;

  std::string to_text() const;
};

inline DemoReport pipeline_demo(const std::string& out_dir,
                                const std::string& data_dir,
                                std::uint64_t seed = 42) {
  DemoReport report;
  const std::string fixture_dir = out_dir + "/fixtures";
  fs::create_directories(out_dir);
  write_demo_fixtures(fixture_dir);

  const SpeakerTables tables = load_speaker_tables(
      data_dir + "/honorifics.txt", data_dir + "/roles.tsv");
  const auto stopwords = load_stopwords(data_dir + "/stopwords_en.txt");

  // Ingest every fixture transcript in path order.
  CorpusStore store;
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(fixture_dir + "/transcripts"))
    paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    const ParseResult parsed = parse_file(tsv::read_file(path), path, tables);
    for (const auto& c : parsed.contributions) store.insert_contribution(c);
    report.files++;
  }
  report.contributions = store.size();

  // Linkage against the register, with the Taoiseach role resolved by date.
  LinkConfig link_cfg;
  link_cfg.date_window = true;
  const auto members = CorpusStore::import_members_tsv(fixture_dir + "/members.tsv");
  const auto roles = load_role_assignments(fixture_dir + "/role_assignments.tsv");
  const LinkReport links =
      link_corpus(store, members, link_cfg, tables.honorifics, {}, roles);
  report.link_matched = links.matched;
  report.link_ambiguous = links.ambiguous;
  report.link_unmatched = links.unmatched;
  report.link_total = links.matched + links.ambiguous + links.unmatched;

  fs::create_directories(out_dir + "/corpus");
  store.export_tsv_file(out_dir + "/corpus/contributions.tsv");
  tsv::write_file(out_dir + "/corpus/link_report.tsv", links.to_tsv());

  // [1] Frequency tables over the budget statements, per minister and
  // overall; word-cloud data, not rendering.
  {
    CorpusQuery q;
    q.title_substring = "Budget Statement";
    const auto rows = store.query(q);
    PreprocessConfig cfg;
    cfg.stopword_list = stopwords;
    cfg.min_doc_frequency = 0.0;
    const auto docs = assemble_documents(rows, true, cfg);
    const CountMatrix m = build_matrix(docs, cfg);
    fs::create_directories(out_dir + "/app1_frequencies");
    std::vector<std::string> all_docs = m.docs;
    const auto overall = top_terms(m, all_docs, 25);
    report.top_term = overall.front().first;
    report.top_term_count = overall.front().second;
    std::string out = tsv::join_row({"term", "count"});
    for (const auto& [term, count] : overall)
      out += tsv::join_row({term, std::to_string(count)});
    tsv::write_file(out_dir + "/app1_frequencies/overall.tsv", out);
    for (const auto& label : m.docs) {
      const auto top = top_terms(m, {label}, 25);
      std::string per = tsv::join_row({"term", "count"});
      for (const auto& [term, count] : top)
        per += tsv::join_row({term, std::to_string(count)});
      tsv::write_file(out_dir + "/app1_frequencies/freq_" + label + ".tsv", per);
    }
  }

  // [2] Wordscore over the 2008 budget debate, anchored on the Taoiseach
  // and the opposition leader.
  {
    CorpusQuery q;
    q.title_substring = "Financial Resolution";
    q.dates = DateInterval{{2007, 1, 1}, {2007, 12, 31}};
    const auto rows = store.query(q);
    PreprocessConfig cfg;
    cfg.min_doc_frequency = 0.0;  // numbers and interjections only
    const auto docs = assemble_documents(rows, true, cfg);
    const CountMatrix m = build_matrix(docs, cfg);
    const WordscoreFit ws = wordscore_fit(
        m, {{"td-bertie-ahern", 1.0}, {"td-enda-kenny", -1.0}});

    const DebateFixture debate = debate_fixture();
    std::map<std::string, const DebateSpeaker*> by_id;
    for (const auto& s : debate.speakers) by_id[s.member_id] = &s;
    report.gov_low = report.opp_low = 1e300;
    report.gov_high = report.opp_high = -1e300;
    for (std::size_t v = 0; v < ws.virgin_docs.size(); ++v) {
      const auto* speaker = by_id.count(ws.virgin_docs[v])
                                ? by_id.at(ws.virgin_docs[v])
                                : nullptr;
      if (!speaker || !ws.virgin_overlap[v]) continue;
      const double pos = ws.virgin_rescaled[v];
      if (speaker->government) {
        report.gov_low = std::min(report.gov_low, pos);
        report.gov_high = std::max(report.gov_high, pos);
      } else {
        report.opp_low = std::min(report.opp_low, pos);
        report.opp_high = std::max(report.opp_high, pos);
      }
    }
    report.clusters_separated = report.gov_low > 0.0 && report.opp_high < 0.0;

    fs::create_directories(out_dir + "/app2_wordscore");
    tsv::write_file(out_dir + "/app2_wordscore/matrix.tsv", matrix_to_tsv(m));
    tsv::write_file(out_dir + "/app2_wordscore/word_scores.tsv",
                    wordscore_terms_tsv(ws));
    tsv::write_file(out_dir + "/app2_wordscore/positions.tsv",
                    wordscore_docs_tsv(ws));
  }

  // [3] Wordfish over the cabinet corpus, validated against departmental
  // spending shares, all departments and the high-spending eight.
  {
    const MinisterFixture cabinet = minister_fixture();
    CorpusQuery q;
    q.title_substring = cabinet.debate_title;
    const auto rows = store.query(q);
    PreprocessConfig cfg;
    cfg.stopword_list = stopwords;
    cfg.min_doc_frequency = 0.2;
    const auto docs = assemble_documents(rows, true, cfg);
    const CountMatrix m = build_matrix(docs, cfg);

    WordfishOptions opt;
    opt.left_anchor = "td-eamon-ocuiv";
    opt.right_anchor = "td-john-odonoghue";
    opt.seed = seed;
    const WordfishFit fit = wordfish_fit(m, opt);
    report.wordfish_converged = fit.converged;
    report.wordfish_iterations = fit.iterations;

    std::vector<std::pair<std::string, double>> positions;
    for (std::size_t i = 0; i < fit.docs.size(); ++i)
      positions.emplace_back(fit.docs[i], fit.omega[i]);

    const auto spending = load_series(fixture_dir + "/spending_2004.tsv");
    const JoinedRegression all =
        correlate_with_series(positions, spending, cabinet.join);
    report.spending_all = all.fit;

    std::set<std::string> high_members;
    for (const auto& minister : cabinet.ministers)
      if (minister.high_spending) high_members.insert(minister.member_id);
    const PairedSeries high = subset_filter(all.joined, high_members);
    report.spending_high = ols(high);

    fs::create_directories(out_dir + "/app3_wordfish");
    tsv::write_file(out_dir + "/app3_wordfish/matrix.tsv", matrix_to_tsv(m));
    tsv::write_file(out_dir + "/app3_wordfish/docs.tsv", wordfish_docs_tsv(fit));
    tsv::write_file(out_dir + "/app3_wordfish/terms.tsv", wordfish_terms_tsv(fit));
    tsv::write_file(out_dir + "/app3_wordfish/regression_all.tsv",
                    regression_report_tsv(report.spending_all));
    tsv::write_file(out_dir + "/app3_wordfish/regression_high.tsv",
                    regression_report_tsv(report.spending_high));
    tsv::write_file(out_dir + "/app3_wordfish/scatter_high.tsv",
                    scatter_tsv(high, report.spending_high));
  }

  tsv::write_file(out_dir + "/report.txt", report.to_text());
  return report;
}

inline std::string DemoReport::to_text() const {
  char buf[2048];
  std::snprintf(
      buf, sizeof(buf),
      "hansard pipeline demo\n"
      "=====================\n"
      "corpus: %zu transcript files, %zu contributions\n"
      "linkage: %llu/%llu contributions matched (%.1f%%), %llu ambiguous, "
      "%llu unmatched\n"
      "\n"
      "[1] budget statements, most frequent term: '%s' (%llu occurrences)\n"
      "\n"
      "[2] 2008 budget debate wordscore (Taoiseach +1, opposition leader -1)\n"
      "    government cluster rescaled range: [%.4f, %.4f]\n"
      "    opposition cluster rescaled range: [%.4f, %.4f]\n"
      "    separated by sign: %s\n"
      "\n"
      "[3] cabinet wordfish vs departmental spending share\n"
      "    fit %s after %d sweeps\n"
      "    all departments:  slope %.4f, r %.4f, p %.4g (n=%zu)\n"
      "    high-spending 8:  slope %.4f, r %.4f, p %.4g (n=%zu)\n",
      files, contributions,
      static_cast<unsigned long long>(link_matched),
      static_cast<unsigned long long>(link_total),
      link_total ? 100.0 * static_cast<double>(link_matched) /
                       static_cast<double>(link_total)
                 : 0.0,
      static_cast<unsigned long long>(link_ambiguous),
      static_cast<unsigned long long>(link_unmatched), top_term.c_str(),
      static_cast<unsigned long long>(top_term_count), gov_low, gov_high,
      opp_low, opp_high, clusters_separated ? "yes" : "no",
      wordfish_converged ? "converged" : "did not converge",
      wordfish_iterations, spending_all.beta1, spending_all.r,
      spending_all.p_value, spending_all.n, spending_high.beta1,
      spending_high.r, spending_high.p_value, spending_high.n);
  return buf;
}

}  // namespace hansard
