#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hansard/dates.hpp"
#include "hansard/errors.hpp"
#include "hansard/tsv.hpp"
#include "hansard/unicode.hpp"

// Contribution storage. One row per speaker turn under one topic heading,
// joined on demand against the members register. The store is a single
// file with a line-oriented layout (see save()) plus a flat TSV
// export/import for interchange.

namespace hansard {

// Register entry for one member of the house.
struct Member {
  std::string member_id;
  std::string canonical_name;
  std::string party;
  std::string constituency;
  CalendarDate active_from;
  CalendarDate active_to;

  bool active_on(const CalendarDate& d) const {
    return active_from <= d && d <= active_to;
  }
};

// One speech act as printed in the transcript.
struct Contribution {
  std::uint64_t contribution_id = 0;  // 0 = unassigned, store allocates
  std::string speaker_raw;
  std::optional<std::string> member_id;  // absent until linkage
  std::string debate_title;
  CalendarDate date;
  std::string text;
  std::uint64_t word_count = 0;
  bool procedural = false;  // empty text is only legal on procedural rows

  bool operator==(const Contribution&) const = default;
};

// Whitespace token count; this is the "number of words" unit used for
// word_count and the per-member summaries.
inline std::uint64_t simple_word_count(std::string_view text) {
  std::uint64_t n = 0;
  bool in_token = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = utf8_next(text, i);
    if (is_unicode_space(cp)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++n;
    }
  }
  return n;
}

struct DateInterval {
  CalendarDate from;
  CalendarDate to;
};

// All filters are optional and conjunctive; an empty query is the corpus.
struct CorpusQuery {
  std::optional<std::set<std::string>> member_ids;
  std::optional<std::set<std::string>> parties;
  std::optional<DateInterval> dates;
  std::optional<std::string> title_substring;
  std::optional<std::string> speaker_substring;
};

struct MemberSummary {
  std::string member_id;  // empty = unlinked sentinel group
  std::uint64_t contribution_count = 0;
  std::uint64_t total_word_count = 0;
};

inline const std::vector<std::string>& contribution_tsv_header() {
  static const std::vector<std::string> h = {
      "contribution_id", "speaker_raw", "member_id",  "party", "constituency",
      "debate_title",    "date",        "word_count", "text"};
  return h;
}

inline const std::vector<std::string>& member_tsv_header() {
  static const std::vector<std::string> h = {
      "member_id", "canonical_name", "party",
      "constituency", "active_from", "active_to"};
  return h;
}

class CorpusStore {
 public:
  // Dates outside this window are rejected at insert; the default covers
  // the house's first sitting through the end of the collected record.
  CorpusStore()
      : range_{{1919, 1, 21}, {2013, 12, 31}},
        mutex_(std::make_unique<std::shared_mutex>()) {}
  CorpusStore(CalendarDate min_date, CalendarDate max_date)
      : range_{min_date, max_date},
        mutex_(std::make_unique<std::shared_mutex>()) {}
  CorpusStore(CorpusStore&&) = default;
  CorpusStore& operator=(CorpusStore&&) = default;

  // ---- register -----------------------------------------------------

  void set_register(std::vector<Member> members) {
    std::unique_lock lock(*mutex_);
    member_index_.clear();
    for (const auto& m : members) {
      if (m.member_id.empty())
        throw InvariantViolation("member_id: empty identifier");
      if (m.canonical_name.empty())
        throw InvariantViolation("canonical_name: empty for member '" +
                                 m.member_id + "'");
      if (!(m.active_from <= m.active_to))
        throw InvariantViolation("active_from > active_to for member '" +
                                 m.member_id + "'");
      if (!member_index_.emplace(m.member_id, member_index_.size()).second)
        throw DuplicateId("member_id '" + m.member_id + "' repeated in register");
    }
    members_ = std::move(members);
  }

  std::vector<Member> members() const {
    std::shared_lock lock(*mutex_);
    return members_;
  }

  std::optional<Member> find_member(const std::string& id) const {
    std::shared_lock lock(*mutex_);
    auto it = member_index_.find(id);
    if (it == member_index_.end()) return std::nullopt;
    return members_[it->second];
  }

  // ---- contributions ------------------------------------------------

  std::uint64_t insert_contribution(Contribution c) {
    std::unique_lock lock(*mutex_);
    validate(c);
    if (c.contribution_id == 0) {
      c.contribution_id = next_id_;
    } else if (ids_.count(c.contribution_id)) {
      throw DuplicateId("contribution_id " + std::to_string(c.contribution_id) +
                        " already present");
    }
    next_id_ = std::max(next_id_, c.contribution_id + 1);
    ids_.insert(c.contribution_id);
    rows_.push_back(std::move(c));
    return rows_.back().contribution_id;
  }

  std::optional<Contribution> get(std::uint64_t contribution_id) const {
    std::shared_lock lock(*mutex_);
    for (const auto& c : rows_) {
      if (c.contribution_id == contribution_id) return c;
    }
    return std::nullopt;
  }

  std::size_t size() const {
    std::shared_lock lock(*mutex_);
    return rows_.size();
  }

  // Returns matching rows ordered by (date, contribution_id).
  std::vector<Contribution> query(const CorpusQuery& q) const {
    std::shared_lock lock(*mutex_);
    std::vector<Contribution> out;
    for (const auto& c : rows_) {
      if (matches(c, q)) out.push_back(c);
    }
    std::sort(out.begin(), out.end(),
              [](const Contribution& a, const Contribution& b) {
                if (a.date != b.date) return a.date < b.date;
                return a.contribution_id < b.contribution_id;
              });
    return out;
  }

  // Per-member aggregates over a query result. Unlinked rows are grouped
  // under an empty member_id so the counts always partition the result.
  // Sorted by total word count descending, member_id ascending on ties.
  std::vector<MemberSummary> summarize_by_member(const CorpusQuery& q) const {
    const std::vector<Contribution> rows = query(q);
    std::map<std::string, MemberSummary> groups;
    for (const auto& c : rows) {
      const std::string key = c.member_id.value_or("");
      auto& g = groups[key];
      g.member_id = key;
      g.contribution_count += 1;
      g.total_word_count += c.word_count;
    }
    std::vector<MemberSummary> out;
    out.reserve(groups.size());
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(),
              [](const MemberSummary& a, const MemberSummary& b) {
                if (a.total_word_count != b.total_word_count)
                  return a.total_word_count > b.total_word_count;
                return a.member_id < b.member_id;
              });
    return out;
  }

  // Applies a link produced by the linkage pass.
  void assign_member(std::uint64_t contribution_id, const std::string& member_id) {
    std::unique_lock lock(*mutex_);
    if (!member_index_.count(member_id))
      throw InvariantViolation("member_id '" + member_id + "' not in register");
    for (auto& c : rows_) {
      if (c.contribution_id == contribution_id) {
        c.member_id = member_id;
        return;
      }
    }
    throw InvariantViolation("contribution_id " + std::to_string(contribution_id) +
                             " not present");
  }

  // ---- single-file persistence ---------------------------------------
  //
  // Layout, line oriented, UTF-8, LF:
  //   hansard.store v1
  //   range <from-iso> <to-iso>
  //   members <count>
  //   <count> member rows, register TSV columns
  //   contributions <count>
  //   <count> rows: contribution_id speaker_raw member_id debate_title
  //                 date word_count procedural text   (TSV-escaped)

  void save(const std::string& path) const {
    std::shared_lock lock(*mutex_);
    std::string out = "hansard.store v1\n";
    out += "range " + to_iso(range_.from) + " " + to_iso(range_.to) + "\n";
    out += "members " + std::to_string(members_.size()) + "\n";
    for (const auto& m : members_) out += tsv::join_row(member_row(m));
    out += "contributions " + std::to_string(rows_.size()) + "\n";
    for (const auto& c : rows_) {
      out += tsv::join_row({std::to_string(c.contribution_id), c.speaker_raw,
                            c.member_id.value_or(""), c.debate_title,
                            to_iso(c.date), std::to_string(c.word_count),
                            c.procedural ? "1" : "0", c.text});
    }
    tsv::write_file(path, out);
  }

  static CorpusStore load(const std::string& path) {
    std::string content;
    try {
      content = tsv::read_file(path);
    } catch (const Error& e) {
      throw StoreUnavailable(e.what());
    }
    const auto lines = tsv::split_lines(content);
    std::size_t at = 0;
    auto need = [&](const char* what) -> const std::string& {
      if (at >= lines.size())
        throw StoreUnavailable(path + ": truncated store, expected " +
                               std::string(what));
      return lines[at++];
    };
    if (need("magic") != "hansard.store v1")
      throw StoreUnavailable(path + ": not a hansard.store v1 file");

    const std::string& range_line = need("range header");
    if (range_line.size() != 6 + 21 || range_line.rfind("range ", 0) != 0)
      throw StoreUnavailable(path + ": expected 'range <from> <to>'");
    CorpusStore store(require_iso_date(range_line.substr(6, 10), path),
                      require_iso_date(range_line.substr(17, 10), path));
    const std::string& mhead = need("members header");
    std::size_t n_members = parse_count(mhead, "members", path);
    std::vector<Member> members;
    members.reserve(n_members);
    for (std::size_t i = 0; i < n_members; ++i) {
      members.push_back(member_from_row(tsv::split_row(need("member row")), path));
    }
    store.set_register(std::move(members));

    const std::string& chead = need("contributions header");
    std::size_t n_rows = parse_count(chead, "contributions", path);
    for (std::size_t i = 0; i < n_rows; ++i) {
      const auto f = tsv::split_row(need("contribution row"));
      if (f.size() != 8)
        throw StoreUnavailable(path + ": bad contribution row (" +
                               std::to_string(f.size()) + " fields)");
      Contribution c;
      c.contribution_id = std::stoull(f[0]);
      c.speaker_raw = f[1];
      if (!f[2].empty()) c.member_id = f[2];
      c.debate_title = f[3];
      c.date = require_iso_date(f[4], path);
      c.word_count = std::stoull(f[5]);
      c.procedural = f[6] == "1";
      c.text = f[7];
      store.insert_contribution(std::move(c));
    }
    return store;
  }

  // ---- TSV interchange -----------------------------------------------

  // Flat export with member fields joined in; the documented corpus format.
  std::string export_tsv() const {
    std::shared_lock lock(*mutex_);
    std::string out = tsv::join_row(contribution_tsv_header());
    for (const auto& c : rows_) {
      std::string party, constituency;
      if (c.member_id) {
        auto it = member_index_.find(*c.member_id);
        if (it != member_index_.end()) {
          party = members_[it->second].party;
          constituency = members_[it->second].constituency;
        }
      }
      out += tsv::join_row({std::to_string(c.contribution_id), c.speaker_raw,
                            c.member_id.value_or(""), party, constituency,
                            c.debate_title, to_iso(c.date),
                            std::to_string(c.word_count), c.text});
    }
    return out;
  }

  void export_tsv_file(const std::string& path) const {
    tsv::write_file(path, export_tsv());
  }

  // Imports rows in export format. party/constituency columns are derived
  // data and ignored; empty text marks the row procedural.
  void import_tsv_file(const std::string& path) {
    const auto rows = tsv::read_table(path, contribution_tsv_header());
    for (const auto& f : rows) {
      Contribution c;
      c.contribution_id = f[0].empty() ? 0 : std::stoull(f[0]);
      c.speaker_raw = f[1];
      if (!f[2].empty()) c.member_id = f[2];
      c.debate_title = f[5];
      c.date = require_iso_date(f[6], path);
      c.word_count = std::stoull(f[7]);
      c.text = f[8];
      c.procedural = c.text.empty();
      insert_contribution(std::move(c));
    }
  }

  static void export_members_tsv(const std::vector<Member>& members,
                                 const std::string& path) {
    std::string out = tsv::join_row(member_tsv_header());
    for (const auto& m : members) out += tsv::join_row(member_row(m));
    tsv::write_file(path, out);
  }

  static std::vector<Member> import_members_tsv(const std::string& path) {
    const auto rows = tsv::read_table(path, member_tsv_header());
    std::vector<Member> members;
    members.reserve(rows.size());
    for (const auto& f : rows) members.push_back(member_from_row(f, path));
    return members;
  }

 private:
  void validate(const Contribution& c) const {
    if (c.speaker_raw.empty() && !c.procedural)
      throw InvariantViolation("speaker_raw: empty on non-procedural row");
    if (c.text.empty() && !c.procedural)
      throw InvariantViolation("text: empty but row not flagged procedural");
    if (c.word_count != simple_word_count(c.text))
      throw InvariantViolation(
          "word_count: stored " + std::to_string(c.word_count) +
          " but text tokenizes to " + std::to_string(simple_word_count(c.text)));
    if (!is_valid_date(c.date))
      throw InvariantViolation("date: not a valid calendar date");
    if (c.date < range_.from || range_.to < c.date)
      throw InvariantViolation("date: " + to_iso(c.date) +
                               " outside corpus range [" + to_iso(range_.from) +
                               ", " + to_iso(range_.to) + "]");
    // Link validation needs a register; stores used as plain row buffers
    // (TSV import without --register) skip it.
    if (c.member_id && !members_.empty() && !member_index_.count(*c.member_id))
      throw InvariantViolation("member_id '" + *c.member_id +
                               "' not in register");
  }

  bool matches(const Contribution& c, const CorpusQuery& q) const {
    if (q.member_ids &&
        (!c.member_id || !q.member_ids->count(*c.member_id)))
      return false;
    if (q.parties) {
      if (!c.member_id) return false;
      auto it = member_index_.find(*c.member_id);
      if (it == member_index_.end()) return false;
      if (!q.parties->count(members_[it->second].party)) return false;
    }
    if (q.dates && (c.date < q.dates->from || q.dates->to < c.date))
      return false;
    if (q.title_substring &&
        c.debate_title.find(*q.title_substring) == std::string::npos)
      return false;
    if (q.speaker_substring &&
        c.speaker_raw.find(*q.speaker_substring) == std::string::npos)
      return false;
    return true;
  }

  static std::vector<std::string> member_row(const Member& m) {
    return {m.member_id, m.canonical_name, m.party, m.constituency,
            to_iso(m.active_from), to_iso(m.active_to)};
  }

  static Member member_from_row(const std::vector<std::string>& f,
                                const std::string& path) {
    if (f.size() != 6)
      throw StoreUnavailable(path + ": bad member row (" +
                             std::to_string(f.size()) + " fields)");
    Member m;
    m.member_id = f[0];
    m.canonical_name = f[1];
    m.party = f[2];
    m.constituency = f[3];
    m.active_from = require_iso_date(f[4], path);
    m.active_to = require_iso_date(f[5], path);
    return m;
  }

  static std::size_t parse_count(const std::string& line, const char* section,
                                 const std::string& path) {
    const std::string prefix = std::string(section) + " ";
    if (line.rfind(prefix, 0) != 0)
      throw StoreUnavailable(path + ": expected '" + section + " <count>'");
    return std::stoull(line.substr(prefix.size()));
  }

  DateInterval range_;
  std::vector<Member> members_;
  std::unordered_map<std::string, std::size_t> member_index_;
  std::vector<Contribution> rows_;
  std::set<std::uint64_t> ids_;
  std::uint64_t next_id_ = 1;
  mutable std::unique_ptr<std::shared_mutex> mutex_;
};

}  // namespace hansard
