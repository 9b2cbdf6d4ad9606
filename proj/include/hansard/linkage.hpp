#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hansard/corpus.hpp"
#include "hansard/errors.hpp"
#include "hansard/ingest.hpp"
#include "hansard/tsv.hpp"
#include "hansard/unicode.hpp"

// Record linkage between printed speaker names and the members register.
// Similarity is the repeated longest-common-substring measure: extract the
// longest shared substring (at least min_common_len characters), remove it
// from both strings, repeat, and normalize twice the total shared length
// by the combined length. It is robust to swapped name parts and dropped
// initials, which is exactly how transcript names go wrong.

namespace hansard {

struct LinkConfig {
  int min_common_len = 2;
  double threshold = 0.80;
  bool date_window = false;  // restrict candidates to date-active members

  void validate() const {
    if (min_common_len < 2)
      throw InvariantViolation("min_common_len must be >= 2");
    if (!(threshold > 0.0 && threshold <= 1.0))
      throw InvariantViolation("threshold must be in (0, 1]");
  }
};

enum class LinkStatus { Matched, Ambiguous, Unmatched };

inline const char* to_string(LinkStatus s) {
  switch (s) {
    case LinkStatus::Matched: return "matched";
    case LinkStatus::Ambiguous: return "ambiguous";
    default: return "unmatched";
  }
}

struct LinkResult {
  std::string speaker_raw;
  std::optional<std::string> best_member_id;
  double similarity = 0.0;
  LinkStatus status = LinkStatus::Unmatched;
};

// Lowercase, fold accents, drop honorific tokens, strip punctuation,
// collapse whitespace. Both sides of every comparison go through this.
inline std::string normalize_name(std::string_view raw,
                                  const std::set<std::string>& honorifics) {
  const std::string folded = fold_for_match(raw);
  std::vector<std::string> tokens = detail::split_ws(folded);
  while (!tokens.empty()) {
    std::string t = tokens.front();
    while (!t.empty() && t.back() == '.') t.pop_back();
    if (!honorifics.count(t)) break;
    tokens.erase(tokens.begin());
  }
  std::string joined;
  for (const auto& t : tokens) {
    if (!joined.empty()) joined.push_back(' ');
    joined += t;
  }
  std::string out;
  std::size_t i = 0;
  while (i < joined.size()) {
    const char32_t cp = utf8_next(joined, i);
    switch (cp) {
      case '.': case ',': case ';': case ':': case '!': case '?':
      case '\'': case 0x2019: case '"': case '(': case ')':
        continue;
      default:
        utf8_append(out, cp);
    }
  }
  return detail::collapse_ws(out);
}

namespace detail {

struct CommonRun {
  std::size_t len = 0;
  std::size_t a_start = 0;
  std::size_t b_start = 0;
};

// Longest common substring by dynamic programming over codepoints. Ties
// on length resolve to the lexicographically smallest substring (then its
// leftmost occurrences). The tie rule is symmetric in a and b, which
// keeps the whole similarity symmetric; an occurrence-position rule would
// not be.
inline CommonRun longest_common_run(const std::vector<char32_t>& a,
                                    const std::vector<char32_t>& b) {
  CommonRun best;
  if (a.empty() || b.empty()) return best;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t max_len = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      max_len = std::max(max_len, cur[j]);
    }
    std::swap(prev, cur);
  }
  if (max_len == 0) return best;

  // Second pass: among runs of maximal length, pick the smallest
  // substring, then its leftmost start in a.
  std::fill(prev.begin(), prev.end(), 0);
  std::fill(cur.begin(), cur.end(), 0);
  bool have = false;
  std::size_t chosen_start = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      if (cur[j] != max_len) continue;
      const std::size_t start = i - max_len;
      if (!have) {
        have = true;
        chosen_start = start;
        continue;
      }
      const auto cand_begin = a.begin() + static_cast<std::ptrdiff_t>(start);
      const auto best_begin = a.begin() + static_cast<std::ptrdiff_t>(chosen_start);
      if (std::lexicographical_compare(cand_begin, cand_begin + static_cast<std::ptrdiff_t>(max_len),
                                       best_begin, best_begin + static_cast<std::ptrdiff_t>(max_len)))
        chosen_start = start;
    }
    std::swap(prev, cur);
  }
  best.len = max_len;
  const std::vector<char32_t> run(
      a.begin() + static_cast<std::ptrdiff_t>(chosen_start),
      a.begin() + static_cast<std::ptrdiff_t>(chosen_start + max_len));
  best.a_start = static_cast<std::size_t>(
      std::search(a.begin(), a.end(), run.begin(), run.end()) - a.begin());
  best.b_start = static_cast<std::size_t>(
      std::search(b.begin(), b.end(), run.begin(), run.end()) - b.begin());
  return best;
}

inline void erase_run(std::vector<char32_t>& v, std::size_t start,
                      std::size_t len) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(start),
          v.begin() + static_cast<std::ptrdiff_t>(start + len));
}

}  // namespace detail

// Repeated-extraction similarity in [0, 1]. Inputs are assumed normalized.
// Equal non-empty strings score 1 even when shorter than min_common_len.
inline double lcs_similarity(std::string_view a, std::string_view b,
                             int min_common_len = 2) {
  if (min_common_len < 2)
    throw InvariantViolation("min_common_len must be >= 2");
  if (a.empty() && b.empty())
    throw BothEmpty("lcs_similarity: both strings empty");
  if (a == b) return 1.0;

  std::vector<char32_t> ua = utf8_decode(a);
  std::vector<char32_t> ub = utf8_decode(b);
  const double denom = static_cast<double>(ua.size() + ub.size());
  std::uint64_t shared = 0;
  while (true) {
    const auto run = detail::longest_common_run(ua, ub);
    if (run.len < static_cast<std::size_t>(min_common_len)) break;
    shared += run.len;
    detail::erase_run(ua, run.a_start, run.len);
    detail::erase_run(ub, run.b_start, run.len);
  }
  return 2.0 * static_cast<double>(shared) / denom;
}

// Date-scoped assignment of an office to a member, used to resolve bare
// role prefixes like "An Taoiseach:".
struct RoleAssignment {
  std::string role;  // folded form
  std::string member_id;
  CalendarDate active_from;
  CalendarDate active_to;
};

inline std::vector<RoleAssignment> load_role_assignments(const std::string& path) {
  std::vector<RoleAssignment> out;
  for (const auto& row :
       tsv::read_table(path, {"role", "member_id", "active_from", "active_to"})) {
    out.push_back({fold_for_match(row[0]), row[1],
                   require_iso_date(row[2], path),
                   require_iso_date(row[3], path)});
  }
  return out;
}

// Links one printed name against the register. Ties within 1e-12 of the
// best similarity are flagged ambiguous, never silently broken, and the
// outcome does not depend on register order.
inline LinkResult link_speaker(
    const std::string& speaker_raw, const CalendarDate& date,
    const std::vector<Member>& register_members, const LinkConfig& cfg,
    const std::set<std::string>& honorifics,
    const std::vector<RoleAssignment>& role_assignments = {}) {
  cfg.validate();
  if (register_members.empty())
    throw EmptyRegister("link_speaker: empty members register");

  LinkResult result;
  result.speaker_raw = speaker_raw;

  const std::string folded_raw = fold_for_match(speaker_raw);
  for (const auto& ra : role_assignments) {
    if (ra.role == folded_raw && ra.active_from <= date && date <= ra.active_to) {
      result.best_member_id = ra.member_id;
      result.similarity = 1.0;
      result.status = LinkStatus::Matched;
      return result;
    }
  }

  const std::string norm = normalize_name(speaker_raw, honorifics);
  double best = -1.0;
  std::vector<const Member*> at_best;
  for (const auto& m : register_members) {
    if (cfg.date_window && !m.active_on(date)) continue;
    const std::string cand = normalize_name(m.canonical_name, honorifics);
    double sim = 0.0;
    if (!norm.empty() || !cand.empty()) {
      sim = lcs_similarity(norm, cand, cfg.min_common_len);
    }
    if (sim > best + 1e-12) {
      best = sim;
      at_best.assign(1, &m);
    } else if (sim >= best - 1e-12) {
      at_best.push_back(&m);
    }
  }
  if (at_best.empty() || best < cfg.threshold) {
    result.similarity = std::max(best, 0.0);
    result.status = LinkStatus::Unmatched;
    return result;
  }
  result.similarity = best;
  if (at_best.size() > 1) {
    // Deterministic representative for the report only.
    std::sort(at_best.begin(), at_best.end(),
              [](const Member* a, const Member* b) {
                return a->member_id < b->member_id;
              });
    result.best_member_id = at_best.front()->member_id;
    result.status = LinkStatus::Ambiguous;
  } else {
    result.best_member_id = at_best.front()->member_id;
    result.status = LinkStatus::Matched;
  }
  return result;
}

struct LinkReportRow {
  std::string speaker_raw;
  LinkStatus status = LinkStatus::Unmatched;
  std::string member_id;  // empty unless matched/override
  double similarity = 0.0;
  std::uint64_t contributions = 0;
  bool overridden = false;
};

struct LinkReport {
  std::uint64_t matched = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t unmatched = 0;
  std::vector<LinkReportRow> rows;  // one per distinct speaker_raw

  std::string to_tsv() const {
    std::string out =
        tsv::join_row({"speaker_raw", "status", "member_id", "similarity",
                       "contributions"});
    for (const auto& r : rows) {
      char sim[32];
      std::snprintf(sim, sizeof(sim), "%.6f", r.similarity);
      out += tsv::join_row({r.speaker_raw,
                            r.overridden ? "override" : to_string(r.status),
                            r.member_id, sim, std::to_string(r.contributions)});
    }
    return out;
  }
};

// Human-review corrections: TSV (speaker_raw, member_id), exact raw match.
inline std::map<std::string, std::string> load_link_overrides(
    const std::string& path) {
  std::map<std::string, std::string> out;
  for (const auto& row : tsv::read_table(path, {"speaker_raw", "member_id"})) {
    out[row[0]] = row[1];
  }
  return out;
}

// Links every contribution in the store against the register, writes the
// matched member ids back, and reports ambiguous/unmatched names for
// review. The register becomes the store's register.
inline LinkReport link_corpus(
    CorpusStore& store, const std::vector<Member>& register_members,
    const LinkConfig& cfg, const std::set<std::string>& honorifics,
    const std::map<std::string, std::string>& overrides = {},
    const std::vector<RoleAssignment>& role_assignments = {}) {
  cfg.validate();
  if (register_members.empty())
    throw EmptyRegister("link_corpus: empty members register");
  store.set_register(register_members);

  struct Agg {
    LinkResult result;
    std::uint64_t contributions = 0;
    bool overridden = false;
  };
  // The outcome depends on the date only through the active window and
  // role assignments, so distinct names can be linked once and reused.
  const bool date_in_key = cfg.date_window || !role_assignments.empty();
  std::map<std::string, Agg> by_key;

  const std::vector<Contribution> rows = store.query({});
  for (const auto& c : rows) {
    std::string key = c.speaker_raw;
    if (date_in_key) key += "\x1f" + to_iso(c.date);
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      Agg agg;
      if (auto ov = overrides.find(c.speaker_raw); ov != overrides.end()) {
        agg.result.speaker_raw = c.speaker_raw;
        agg.result.best_member_id = ov->second;
        agg.result.similarity = 1.0;
        agg.result.status = LinkStatus::Matched;
        agg.overridden = true;
      } else {
        agg.result = link_speaker(c.speaker_raw, c.date, register_members, cfg,
                                  honorifics, role_assignments);
      }
      it = by_key.emplace(std::move(key), std::move(agg)).first;
    }
    it->second.contributions++;
    if (it->second.result.status == LinkStatus::Matched) {
      store.assign_member(c.contribution_id, *it->second.result.best_member_id);
    }
  }

  LinkReport report;
  for (const auto& [_, agg] : by_key) {
    switch (agg.result.status) {
      case LinkStatus::Matched: report.matched += agg.contributions; break;
      case LinkStatus::Ambiguous: report.ambiguous += agg.contributions; break;
      case LinkStatus::Unmatched: report.unmatched += agg.contributions; break;
    }
    report.rows.push_back({agg.result.speaker_raw, agg.result.status,
                           agg.result.best_member_id.value_or(""),
                           agg.result.similarity, agg.contributions,
                           agg.overridden});
  }
  return report;
}

}  // namespace hansard
