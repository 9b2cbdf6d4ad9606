// hansard: build a linked speech corpus from transcript files and scale
// speaker positions from word frequencies.
//
// Subcommands compose through documented TSV formats:
//   ingest -> link -> query/dtm -> freq/wordfish/wordscore -> validate
// plus `demo`, which runs the three bundled applications end to end.
//
// Exit codes: 0 success, 1 usage error, 2 data error (the message names
// the offending file or record).

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hansard/corpus.hpp"
#include "hansard/dtm.hpp"
#include "hansard/errors.hpp"
#include "hansard/ingest.hpp"
#include "hansard/linkage.hpp"
#include "hansard/manifest.hpp"
#include "hansard/pipeline.hpp"
#include "hansard/stats.hpp"
#include "hansard/version.hpp"
#include "hansard/wordfish.hpp"
#include "hansard/wordscore.hpp"

#include "json.hpp"

namespace fs = std::filesystem;
using namespace hansard;

namespace {

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

#ifndef HANSARD_DEFAULT_DATA_DIR
#define HANSARD_DEFAULT_DATA_DIR "data"
#endif

std::string g_data_dir = HANSARD_DEFAULT_DATA_DIR;

void ensure_output_dir(const std::string& dir) {
  if (dir.empty()) throw UsageError("--output is required");
  fs::create_directories(dir);
}

std::vector<std::string> sorted_files(const std::string& dir) {
  if (!fs::is_directory(dir))
    throw Error("input directory not found: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!name.empty() && name[0] == '.') continue;
    paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

CorpusQuery query_from_flags(const std::vector<std::string>& member,
                             const std::vector<std::string>& party,
                             const std::string& from, const std::string& to,
                             const std::string& title,
                             const std::string& speaker) {
  CorpusQuery q;
  if (!member.empty())
    q.member_ids = std::set<std::string>(member.begin(), member.end());
  if (!party.empty())
    q.parties = std::set<std::string>(party.begin(), party.end());
  if (!from.empty() || !to.empty()) {
    DateInterval interval{{1, 1, 1}, {9999, 12, 31}};
    if (!from.empty()) {
      auto d = parse_iso_date(from);
      if (!d) throw UsageError("--from: bad date '" + from + "'");
      interval.from = *d;
    }
    if (!to.empty()) {
      auto d = parse_iso_date(to);
      if (!d) throw UsageError("--to: bad date '" + to + "'");
      interval.to = *d;
    }
    if (interval.to < interval.from)
      throw UsageError("--from/--to: interval is not well-ordered");
    q.dates = interval;
  }
  if (!title.empty()) q.title_substring = title;
  if (!speaker.empty()) q.speaker_substring = speaker;
  return q;
}

std::vector<std::pair<std::string, double>> load_positions(
    const std::string& path) {
  const std::string content = tsv::read_file(path);
  const auto lines = tsv::split_lines(content);
  if (lines.empty()) throw Error(path + ": empty positions file");
  const auto header = tsv::split_row(lines[0]);
  std::size_t value_col;
  if (header == std::vector<std::string>{"label", "value"}) {
    value_col = 1;
  } else if (header.size() >= 2 && header[0] == "doc") {
    value_col = 1;  // wordfish docs.tsv: doc, omega, alpha
  } else {
    throw Error(path + ": expected (label, value) or wordfish docs format");
  }
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = tsv::split_row(lines[i]);
    out.emplace_back(f[0], std::stod(f[value_col]));
  }
  return out;
}

// ---- subcommand handlers --------------------------------------------------

int cmd_ingest(const std::string& input, const std::string& output,
               const std::string& manifest_tsv) {
  ensure_output_dir(output);
  std::map<std::string, CalendarDate> dates;
  if (!manifest_tsv.empty()) dates = read_ingest_manifest(manifest_tsv);
  const SpeakerTables tables = load_speaker_tables(
      g_data_dir + "/honorifics.txt", g_data_dir + "/roles.tsv");

  CorpusStore store;
  nlohmann::json files = nlohmann::json::array();
  RunManifest manifest;
  manifest.subcommand = "ingest";
  std::size_t total_turns = 0, total_drops = 0;
  for (const auto& path : sorted_files(input)) {
    const std::string bytes = tsv::read_file(path);
    manifest.inputs[path] = digest_hex(bytes);
    std::optional<CalendarDate> manifest_date;
    if (auto it = dates.find(path); it != dates.end()) manifest_date = it->second;
    else if (auto it2 = dates.find(fs::path(path).filename().string());
             it2 != dates.end())
      manifest_date = it2->second;
    const ParseResult parsed = parse_file(bytes, path, tables, manifest_date);
    for (const auto& c : parsed.contributions) store.insert_contribution(c);
    files.push_back({{"path", path},
                     {"turns", parsed.report.turns},
                     {"headings", parsed.report.headings},
                     {"drops", parsed.report.drops}});
    total_turns += parsed.report.turns;
    total_drops += parsed.report.drops;
  }
  store.export_tsv_file(output + "/contributions.tsv");
  nlohmann::json report = {{"files", files},
                           {"total_files", files.size()},
                           {"total_turns", total_turns},
                           {"total_drops", total_drops},
                           {"errors", nlohmann::json::array()}};
  tsv::write_file(output + "/parse_report.json", report.dump(2) + "\n");
  manifest.config = {{"input", input},
                     {"manifest_tsv", manifest_tsv},
                     {"data_dir", g_data_dir}};
  manifest.write(output);
  std::cout << "ingest: " << files.size() << " files, " << total_turns
            << " contributions, " << total_drops << " dropped segments\n";
  return 0;
}

int cmd_link(const std::string& input, const std::string& register_path,
             const std::string& output, double threshold, int min_common_len,
             bool date_window, const std::string& overrides_path,
             const std::string& roles_path) {
  ensure_output_dir(output);
  CorpusStore store;
  store.import_tsv_file(input);
  const auto members = CorpusStore::import_members_tsv(register_path);
  const SpeakerTables tables = load_speaker_tables(
      g_data_dir + "/honorifics.txt", g_data_dir + "/roles.tsv");

  LinkConfig cfg;
  cfg.threshold = threshold;
  cfg.min_common_len = min_common_len;
  cfg.date_window = date_window;
  std::map<std::string, std::string> overrides;
  if (!overrides_path.empty()) overrides = load_link_overrides(overrides_path);
  std::vector<RoleAssignment> roles;
  if (!roles_path.empty()) roles = load_role_assignments(roles_path);

  const LinkReport report =
      link_corpus(store, members, cfg, tables.honorifics, overrides, roles);
  store.export_tsv_file(output + "/contributions.tsv");
  tsv::write_file(output + "/link_report.tsv", report.to_tsv());

  RunManifest manifest;
  manifest.subcommand = "link";
  manifest.inputs[input] = digest_file(input);
  manifest.inputs[register_path] = digest_file(register_path);
  if (!overrides_path.empty())
    manifest.inputs[overrides_path] = digest_file(overrides_path);
  if (!roles_path.empty())
    manifest.inputs[roles_path] = digest_file(roles_path);
  manifest.config = {{"threshold", format_real(threshold)},
                     {"min_common_len", std::to_string(min_common_len)},
                     {"date_window", date_window ? "1" : "0"},
                     {"data_dir", g_data_dir}};
  manifest.write(output);
  std::cout << "link: " << report.matched << " matched, " << report.ambiguous
            << " ambiguous, " << report.unmatched << " unmatched\n";
  return 0;
}

int cmd_query(const std::string& input, const std::string& register_path,
              const std::string& output, const CorpusQuery& q,
              bool summarize) {
  ensure_output_dir(output);
  CorpusStore store;
  if (!register_path.empty())
    store.set_register(CorpusStore::import_members_tsv(register_path));
  store.import_tsv_file(input);
  if (q.parties && register_path.empty())
    throw UsageError("--party filtering needs --register");

  CorpusStore result;
  if (!register_path.empty())
    result.set_register(CorpusStore::import_members_tsv(register_path));
  for (const auto& c : store.query(q)) result.insert_contribution(c);
  result.export_tsv_file(output + "/result.tsv");
  if (summarize) {
    std::string out =
        tsv::join_row({"member_id", "contribution_count", "total_word_count"});
    for (const auto& g : store.summarize_by_member(q)) {
      out += tsv::join_row({g.member_id, std::to_string(g.contribution_count),
                            std::to_string(g.total_word_count)});
    }
    tsv::write_file(output + "/summary.tsv", out);
  }

  RunManifest manifest;
  manifest.subcommand = "query";
  manifest.inputs[input] = digest_file(input);
  if (!register_path.empty())
    manifest.inputs[register_path] = digest_file(register_path);
  manifest.config = {{"summarize", summarize ? "1" : "0"}};
  manifest.write(output);
  std::cout << "query: " << result.size() << " rows\n";
  return 0;
}

int cmd_dtm(const std::string& input, const std::string& output,
            const CorpusQuery& q, const std::string& group_by,
            PreprocessConfig cfg, const std::string& stopwords_path,
            bool sparse) {
  ensure_output_dir(output);
  if (group_by != "member" && group_by != "contribution")
    throw UsageError("--group-by must be 'member' or 'contribution'");
  if (!stopwords_path.empty()) cfg.stopword_list = load_stopwords(stopwords_path);

  CorpusStore store;
  store.import_tsv_file(input);
  const auto rows = store.query(q);
  const auto docs = assemble_documents(rows, group_by == "member", cfg);
  const CountMatrix m = build_matrix(docs, cfg);
  tsv::write_file(output + "/matrix.tsv", matrix_to_tsv(m));
  if (sparse)
    tsv::write_file(output + "/matrix_sparse.tsv", matrix_to_sparse_tsv(m));

  RunManifest manifest;
  manifest.subcommand = "dtm";
  manifest.inputs[input] = digest_file(input);
  if (!stopwords_path.empty())
    manifest.inputs[stopwords_path] = digest_file(stopwords_path);
  manifest.config = {{"group_by", group_by},
                     {"min_doc_frequency", format_real(cfg.min_doc_frequency)},
                     {"min_tokens", std::to_string(cfg.min_tokens)},
                     {"lowercase", cfg.lowercase ? "1" : "0"},
                     {"strip_numbers", cfg.strip_numbers ? "1" : "0"},
                     {"strip_punct", cfg.strip_punct ? "1" : "0"},
                     {"sparse", sparse ? "1" : "0"}};
  manifest.write(output);
  std::cout << "dtm: " << m.n_docs() << " docs x " << m.n_terms() << " terms\n";
  return 0;
}

int cmd_freq(const std::string& dtm_path, const std::string& output,
             std::vector<std::string> docs, std::size_t top) {
  ensure_output_dir(output);
  const CountMatrix m = load_matrix(dtm_path);
  if (docs.empty()) docs = m.docs;
  const auto ranked = top_terms(m, docs, top);
  std::string out = tsv::join_row({"term", "count"});
  for (const auto& [term, count] : ranked)
    out += tsv::join_row({term, std::to_string(count)});
  tsv::write_file(output + "/frequencies.tsv", out);

  RunManifest manifest;
  manifest.subcommand = "freq";
  manifest.inputs[dtm_path] = digest_file(dtm_path);
  manifest.config = {{"top", std::to_string(top)},
                     {"docs", std::to_string(docs.size())}};
  manifest.write(output);
  std::cout << "freq: top " << ranked.size() << " terms over " << docs.size()
            << " docs\n";
  return 0;
}

int cmd_wordfish(const std::string& dtm_path, const std::string& output,
                 const std::string& anchors, double tol, int max_iter,
                 std::uint64_t seed) {
  ensure_output_dir(output);
  const std::size_t comma = anchors.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= anchors.size())
    throw UsageError("--anchors expects 'left_doc,right_doc'");
  WordfishOptions opt;
  opt.left_anchor = anchors.substr(0, comma);
  opt.right_anchor = anchors.substr(comma + 1);
  opt.tol = tol;
  opt.max_iter = max_iter;
  opt.seed = seed;

  const CountMatrix m = load_matrix(dtm_path);
  const WordfishFit fit = wordfish_fit(m, opt);
  tsv::write_file(output + "/docs.tsv", wordfish_docs_tsv(fit));
  tsv::write_file(output + "/terms.tsv", wordfish_terms_tsv(fit));

  RunManifest manifest;
  manifest.subcommand = "wordfish";
  manifest.seed = seed;
  manifest.inputs[dtm_path] = digest_file(dtm_path);
  manifest.config = {{"anchors", anchors},
                     {"tol", format_real(tol)},
                     {"max_iter", std::to_string(max_iter)},
                     {"iterations", std::to_string(fit.iterations)},
                     {"converged", fit.converged ? "1" : "0"},
                     {"log_likelihood", format_real(fit.log_likelihood)}};
  manifest.write(output);
  std::cout << "wordfish: " << (fit.converged ? "converged" : "max_iter hit")
            << " after " << fit.iterations
            << " sweeps, loglik " << format_real(fit.log_likelihood) << "\n";
  return 0;
}

int cmd_wordscore(const std::string& dtm_path, const std::string& output,
                  const std::vector<std::string>& ref_specs,
                  const std::vector<std::string>& virgins,
                  const std::string& rescale) {
  ensure_output_dir(output);
  if (rescale != "affine" && rescale != "identity")
    throw UsageError("--rescale must be 'affine' or 'identity'");
  std::vector<std::pair<std::string, double>> refs;
  for (const auto& spec : ref_specs) {
    const std::size_t eq = spec.rfind('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--ref expects 'doc_label=score', got '" + spec + "'");
    try {
      refs.emplace_back(spec.substr(0, eq), std::stod(spec.substr(eq + 1)));
    } catch (const std::exception&) {
      throw UsageError("--ref: bad score in '" + spec + "'");
    }
  }

  const CountMatrix m = load_matrix(dtm_path);
  const WordscoreFit fit = wordscore_fit(m, refs, virgins,
                                         rescale == "affine"
                                             ? WordscoreRescale::Affine
                                             : WordscoreRescale::Identity);
  tsv::write_file(output + "/word_scores.tsv", wordscore_terms_tsv(fit));
  tsv::write_file(output + "/positions.tsv", wordscore_docs_tsv(fit));

  RunManifest manifest;
  manifest.subcommand = "wordscore";
  manifest.inputs[dtm_path] = digest_file(dtm_path);
  std::string ref_str;
  for (const auto& r : ref_specs) {
    if (!ref_str.empty()) ref_str.push_back(' ');
    ref_str += r;
  }
  manifest.config = {{"refs", ref_str}, {"rescale", rescale}};
  manifest.write(output);

  std::size_t flagged = 0;
  for (const auto overlap : fit.virgin_overlap)
    if (!overlap) ++flagged;
  std::cout << "wordscore: " << fit.virgin_docs.size() << " virgin docs scored";
  if (flagged) std::cout << ", " << flagged << " flagged with no overlap";
  std::cout << "\n";
  return 0;
}

int cmd_validate(const std::string& positions_path,
                 const std::string& series_path, const std::string& join_path,
                 const std::vector<std::string>& keep,
                 const std::string& output) {
  ensure_output_dir(output);
  const auto positions = load_positions(positions_path);
  const auto series = load_series(series_path);
  std::map<std::string, std::string> join;
  if (!join_path.empty()) {
    for (const auto& row :
         tsv::read_table(join_path, {"position_label", "series_label"}))
      join[row[0]] = row[1];
  }
  JoinedRegression reg = correlate_with_series(positions, series, join);
  PairedSeries used = reg.joined;
  RegressionFit fit = reg.fit;
  if (!keep.empty()) {
    used = subset_filter(used, std::set<std::string>(keep.begin(), keep.end()));
    fit = ols(used);
  }
  tsv::write_file(output + "/fit.tsv", regression_report_tsv(fit));
  tsv::write_file(output + "/scatter.tsv", scatter_tsv(used, fit));
  std::string summary = regression_summary_text("validation fit", fit);
  for (const auto& label : reg.unjoined_positions)
    summary += "unjoined position: " + label + "\n";
  for (const auto& label : reg.unjoined_series)
    summary += "unjoined series label: " + label + "\n";
  tsv::write_file(output + "/summary.txt", summary);

  RunManifest manifest;
  manifest.subcommand = "validate";
  manifest.inputs[positions_path] = digest_file(positions_path);
  manifest.inputs[series_path] = digest_file(series_path);
  if (!join_path.empty()) manifest.inputs[join_path] = digest_file(join_path);
  manifest.config = {{"keep", std::to_string(keep.size())},
                     {"n", std::to_string(fit.n)}};
  manifest.write(output);
  std::cout << regression_summary_text("validate", fit);
  return 0;
}

int cmd_demo(const std::string& output, std::uint64_t seed) {
  ensure_output_dir(output);
  const DemoReport report = pipeline_demo(output, g_data_dir, seed);
  RunManifest manifest;
  manifest.subcommand = "demo";
  manifest.seed = seed;
  manifest.config = {{"data_dir", g_data_dir}};
  manifest.write(output);
  std::cout << report.to_text();
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"hansard: parliamentary speech corpus and scaling toolkit"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);
  app.add_option("--data-dir", g_data_dir,
                 "directory with honorifics.txt, roles.tsv, stopwords_en.txt")
      ->envname("HANSARD_DATA_DIR");

  std::function<int()> action;

  // ingest
  {
    auto* sub = app.add_subcommand("ingest",
                                   "parse transcript files into contributions");
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto manifest_tsv = std::make_shared<std::string>();
    sub->add_option("--input", *input, "directory of transcript files")->required();
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--manifest-tsv", *manifest_tsv,
                    "per-file sitting dates, TSV (path, sitting_date)");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] { return cmd_ingest(*input, *output, *manifest_tsv); };
    });
  }

  // link
  {
    auto* sub = app.add_subcommand("link", "link speakers to the register");
    auto input = std::make_shared<std::string>();
    auto reg = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto threshold = std::make_shared<double>(0.80);
    auto min_common = std::make_shared<int>(2);
    auto date_window = std::make_shared<bool>(false);
    auto overrides = std::make_shared<std::string>();
    auto roles = std::make_shared<std::string>();
    sub->add_option("--input", *input, "contributions TSV")->required();
    sub->add_option("--register", *reg, "members TSV")->required();
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--threshold", *threshold, "similarity threshold (0,1]");
    sub->add_option("--min-common-len", *min_common, "substring floor, >= 2");
    sub->add_flag("--date-window", *date_window,
                  "only candidates active on the contribution date");
    sub->add_option("--overrides", *overrides,
                    "review corrections TSV (speaker_raw, member_id)");
    sub->add_option("--role-assignments", *roles,
                    "TSV (role, member_id, active_from, active_to)");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] {
        return cmd_link(*input, *reg, *output, *threshold, *min_common,
                        *date_window, *overrides, *roles);
      };
    });
  }

  // query
  {
    auto* sub = app.add_subcommand("query", "filter the corpus");
    auto input = std::make_shared<std::string>();
    auto reg = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto member = std::make_shared<std::vector<std::string>>();
    auto party = std::make_shared<std::vector<std::string>>();
    auto from = std::make_shared<std::string>();
    auto to = std::make_shared<std::string>();
    auto title = std::make_shared<std::string>();
    auto speaker = std::make_shared<std::string>();
    auto summarize = std::make_shared<bool>(false);
    sub->add_option("--input", *input, "contributions TSV")->required();
    sub->add_option("--register", *reg, "members TSV (needed for --party)");
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--member", *member, "member id (repeatable)");
    sub->add_option("--party", *party, "party code (repeatable)");
    sub->add_option("--from", *from, "first date, ISO");
    sub->add_option("--to", *to, "last date, ISO");
    sub->add_option("--title", *title, "debate-title substring");
    sub->add_option("--speaker", *speaker, "speaker_raw substring");
    sub->add_flag("--summarize", *summarize, "also write per-member totals");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] {
        return cmd_query(*input, *reg, *output,
                         query_from_flags(*member, *party, *from, *to, *title,
                                          *speaker),
                         *summarize);
      };
    });
  }

  // dtm
  {
    auto* sub = app.add_subcommand("dtm", "build a document-term matrix");
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto group_by = std::make_shared<std::string>("member");
    auto mdf = std::make_shared<double>(0.0);
    auto min_tokens = std::make_shared<std::size_t>(10);
    auto stopwords = std::make_shared<std::string>();
    auto no_lower = std::make_shared<bool>(false);
    auto keep_numbers = std::make_shared<bool>(false);
    auto keep_punct = std::make_shared<bool>(false);
    auto sparse = std::make_shared<bool>(false);
    auto member = std::make_shared<std::vector<std::string>>();
    auto from = std::make_shared<std::string>();
    auto to = std::make_shared<std::string>();
    auto title = std::make_shared<std::string>();
    sub->add_option("--input", *input, "contributions TSV")->required();
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--group-by", *group_by, "member | contribution");
    sub->add_option("--min-doc-freq", *mdf,
                    "drop terms in less than this fraction of documents");
    sub->add_option("--min-tokens", *min_tokens,
                    "drop contributions shorter than this many tokens");
    sub->add_option("--stopwords", *stopwords, "stopword list file");
    sub->add_flag("--no-lowercase", *no_lower, "keep case");
    sub->add_flag("--keep-numbers", *keep_numbers, "keep tokens with digits");
    sub->add_flag("--keep-punct", *keep_punct, "keep punctuation characters");
    sub->add_flag("--sparse", *sparse, "also write sparse triplets");
    sub->add_option("--member", *member, "member id filter (repeatable)");
    sub->add_option("--from", *from, "first date, ISO");
    sub->add_option("--to", *to, "last date, ISO");
    sub->add_option("--title", *title, "debate-title substring");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] {
        PreprocessConfig cfg;
        cfg.lowercase = !*no_lower;
        cfg.strip_numbers = !*keep_numbers;
        cfg.strip_punct = !*keep_punct;
        cfg.min_doc_frequency = *mdf;
        cfg.min_tokens = *min_tokens;
        return cmd_dtm(*input, *output,
                       query_from_flags(*member, {}, *from, *to, *title, ""),
                       *group_by, cfg, *stopwords, *sparse);
      };
    });
  }

  // freq
  {
    auto* sub = app.add_subcommand("freq", "top term frequencies");
    auto dtm = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto docs = std::make_shared<std::vector<std::string>>();
    auto top = std::make_shared<std::size_t>(50);
    sub->add_option("--dtm", *dtm, "matrix TSV")->required();
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--docs", *docs, "doc label subset (repeatable)");
    sub->add_option("--top", *top, "how many terms");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] { return cmd_freq(*dtm, *output, *docs, *top); };
    });
  }

  // wordfish
  {
    auto* sub = app.add_subcommand("wordfish", "unsupervised position scaling");
    auto dtm = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto anchors = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-6);
    auto max_iter = std::make_shared<int>(500);
    auto seed = std::make_shared<std::uint64_t>(42);
    sub->add_option("--dtm", *dtm, "matrix TSV")->required();
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--anchors", *anchors, "left_doc,right_doc sign anchors")
        ->required();
    sub->add_option("--tol", *tol, "relative log-likelihood tolerance");
    sub->add_option("--max-iter", *max_iter, "maximum sweeps");
    sub->add_option("--seed", *seed, "seed for the start vector");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] {
        return cmd_wordfish(*dtm, *output, *anchors, *tol, *max_iter, *seed);
      };
    });
  }

  // wordscore
  {
    auto* sub = app.add_subcommand("wordscore", "reference-text scoring");
    auto dtm = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto refs = std::make_shared<std::vector<std::string>>();
    auto virgins = std::make_shared<std::vector<std::string>>();
    auto rescale = std::make_shared<std::string>("affine");
    sub->add_option("--dtm", *dtm, "matrix TSV")->required();
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--ref", *refs, "reference 'doc_label=score' (repeatable)")
        ->required();
    sub->add_option("--virgin", *virgins,
                    "virgin doc label (repeatable; default all non-refs)");
    sub->add_option("--rescale", *rescale, "affine | identity");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] {
        return cmd_wordscore(*dtm, *output, *refs, *virgins, *rescale);
      };
    });
  }

  // validate
  {
    auto* sub = app.add_subcommand(
        "validate", "OLS of an outcome series on estimated positions");
    auto positions = std::make_shared<std::string>();
    auto series = std::make_shared<std::string>();
    auto join = std::make_shared<std::string>();
    auto keep = std::make_shared<std::vector<std::string>>();
    auto output = std::make_shared<std::string>();
    sub->add_option("--positions", *positions,
                    "positions TSV (label,value) or wordfish docs.tsv")
        ->required();
    sub->add_option("--series", *series, "outcome series TSV (label,value)")
        ->required();
    sub->add_option("--join", *join,
                    "label map TSV (position_label, series_label)");
    sub->add_option("--keep", *keep, "position label subset (repeatable)");
    sub->add_option("--output", *output, "output directory")->required();
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] {
        return cmd_validate(*positions, *series, *join, *keep, *output);
      };
    });
  }

  // demo
  {
    auto* sub = app.add_subcommand(
        "demo", "run the three bundled applications end to end");
    auto output = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(42);
    sub->add_option("--output", *output, "output directory")->required();
    sub->add_option("--seed", *seed, "seed for the scaling start vector");
    sub->set_config("--config");
    sub->callback([=, &action] {
      action = [=] { return cmd_demo(*output, *seed); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return action ? action() : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const hansard::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int main(int argc, char** argv) { return run(argc, argv); }
