#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hansard/corpus.hpp"
#include "hansard/dates.hpp"
#include "hansard/errors.hpp"
#include "hansard/tsv.hpp"
#include "hansard/unicode.hpp"

// Transcript parsing. Input is the canonical transcript markup, a small
// HTML-like dialect that mirrors how sittings are printed:
//
//   <h1>..</h1> .. <h4>..</h4>   topic headings (nearest one titles a turn)
//   <p>..</p>                    paragraphs; "Name: text" opens a turn,
//                                a plain paragraph continues the open turn
//   <i>..</i> / <em>..</em>      procedural notes, never part of a turn
//   <!-- .. -->                  ignored
//
// Unknown tags are treated as inline formatting and skipped; stray close
// tags are ignored; untagged text runs are paragraphs split on blank
// lines. A tag left unterminated at end of input is beyond recovery and
// raises MalformedMarkup. Site-specific dialects can be adapted by
// converting to this markup before ingest.

namespace hansard {

struct SpeakerTables {
  std::set<std::string> honorifics;       // folded, no trailing dots
  std::set<std::string> role_exact;       // folded
  std::vector<std::string> role_prefixes; // folded
};

// honorifics file: one title per line, '#' comments.
// roles file: TSV (pattern, match) with match in {exact, prefix}.
inline SpeakerTables load_speaker_tables(const std::string& honorifics_path,
                                         const std::string& roles_path) {
  SpeakerTables t;
  for (const auto& line : tsv::split_lines(tsv::read_file(honorifics_path))) {
    if (line.empty() || line[0] == '#') continue;
    t.honorifics.insert(fold_for_match(line));
  }
  for (const auto& row : tsv::read_table(roles_path, {"pattern", "match"})) {
    if (row[1] == "exact") {
      t.role_exact.insert(fold_for_match(row[0]));
    } else if (row[1] == "prefix") {
      t.role_prefixes.push_back(fold_for_match(row[0]));
    } else {
      throw Error(roles_path + ": match must be 'exact' or 'prefix', got '" +
                  row[1] + "'");
    }
  }
  return t;
}

struct SpeakerRef {
  std::string name;                 // honorifics stripped, original case
  std::optional<std::string> role;  // set when the prefix named an office
};

namespace detail {

inline std::string collapse_ws(std::string_view s) {
  std::string out;
  bool pending = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char32_t cp = utf8_next(s, i);
    if (is_unicode_space(cp)) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out.push_back(' ');
      pending = false;
    }
    utf8_append(out, cp);
  }
  return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline bool is_role(const SpeakerTables& t, const std::string& folded) {
  if (t.role_exact.count(folded)) return true;
  for (const auto& p : t.role_prefixes) {
    if (folded.size() > p.size() && folded.compare(0, p.size(), p) == 0)
      return true;
  }
  return false;
}

// A plausible personal-name token: letters (accents welcome), initials
// with dots, apostrophes and hyphens. No digits, no other punctuation.
inline bool is_name_token(const std::string& tok, bool& capitalized) {
  capitalized = false;
  bool first = true;
  std::size_t i = 0;
  while (i < tok.size()) {
    const char32_t cp = utf8_next(std::string_view(tok), i);
    const char32_t folded = fold_accent(cp);
    const bool upper = folded >= 'A' && folded <= 'Z';
    const bool lower = folded >= 'a' && folded <= 'z';
    if (first) {
      if (upper) capitalized = true;
      if (!upper && !lower) return false;
      first = false;
      continue;
    }
    if (!upper && !lower && cp != '.' && cp != '\'' && cp != 0x2019 &&
        cp != '-')
      return false;
  }
  return !first;
}

inline bool strip_honorifics(const SpeakerTables& t,
                             std::vector<std::string>& tokens) {
  bool stripped = false;
  while (!tokens.empty()) {
    std::string folded = fold_for_match(tokens.front());
    while (!folded.empty() && folded.back() == '.') folded.pop_back();
    if (!t.honorifics.count(folded)) break;
    tokens.erase(tokens.begin());
    stripped = true;
  }
  return stripped;
}

}  // namespace detail

// Matches the speaker-turn pattern: a name prefix, optionally with
// honorifics or an office, terminated by a colon before the body.
// Returns absent for anything else; absent is a value, not an error.
inline std::optional<SpeakerRef> extract_speaker(std::string_view line,
                                                 const SpeakerTables& tables) {
  const std::size_t colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  std::string prefix = detail::collapse_ws(line.substr(0, colon));
  if (prefix.empty() || prefix.size() > 80) return std::nullopt;
  for (char c : prefix) {
    if (c >= '0' && c <= '9') return std::nullopt;
  }

  // "Office (Name):" carries both the role and the person.
  if (prefix.back() == ')') {
    const std::size_t open = prefix.find(" (");
    if (open != std::string::npos && open > 0) {
      const std::string office = prefix.substr(0, open);
      std::string inner = prefix.substr(open + 2, prefix.size() - open - 3);
      if (detail::is_role(tables, fold_for_match(office)) && !inner.empty()) {
        auto tokens = detail::split_ws(detail::collapse_ws(inner));
        detail::strip_honorifics(tables, tokens);
        if (tokens.empty()) return std::nullopt;
        std::string name;
        for (const auto& tok : tokens) {
          if (!name.empty()) name.push_back(' ');
          name += tok;
        }
        return SpeakerRef{name, office};
      }
    }
    return std::nullopt;
  }

  // A bare office name is kept verbatim; linkage resolves it by date.
  if (detail::is_role(tables, fold_for_match(prefix))) {
    return SpeakerRef{prefix, prefix};
  }

  auto tokens = detail::split_ws(prefix);
  const bool had_honorific = detail::strip_honorifics(tables, tokens);
  if (tokens.empty() || tokens.size() > 6) return std::nullopt;
  std::size_t capitalized = 0;
  for (const auto& tok : tokens) {
    bool cap = false;
    static const std::set<std::string> particles = {"de", "van", "von", "der"};
    if (particles.count(tok)) continue;
    // Every non-particle token must read as a capitalized name; prefixes
    // like "Question put" are procedural, not speakers.
    if (!detail::is_name_token(tok, cap) || !cap) return std::nullopt;
    ++capitalized;
  }
  if (capitalized == 0) return std::nullopt;
  // A single capitalized word with no honorific ("Resolved:") is far more
  // often a procedural keyword than a surname.
  if (tokens.size() < 2 && !had_honorific) return std::nullopt;
  std::string name;
  for (const auto& tok : tokens) {
    if (!name.empty()) name.push_back(' ');
    name += tok;
  }
  return SpeakerRef{name, std::nullopt};
}

// ---- block scanner ------------------------------------------------------

enum class BlockKind { Heading, Paragraph, Procedural };

struct Block {
  BlockKind kind;
  std::string text;  // whitespace collapsed
};

struct TranscriptFile {
  std::string source_path;
  std::optional<CalendarDate> sitting_date;
  std::vector<Block> blocks;
};

namespace detail {

inline bool tag_name_is(const std::string& name, std::string_view want) {
  if (name.size() != want.size()) return false;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != want[i]) return false;
  }
  return true;
}

inline bool is_heading_tag(const std::string& name) {
  return name.size() == 2 && (name[0] == 'h' || name[0] == 'H') &&
         name[1] >= '1' && name[1] <= '6';
}

}  // namespace detail

// Splits decoded markup into visible-text blocks. Throws MalformedMarkup
// for a tag that never terminates; everything else is recovered.
inline std::vector<Block> scan_blocks(std::string_view content) {
  std::vector<Block> blocks;
  std::string current;
  BlockKind kind = BlockKind::Paragraph;
  bool block_has_text = false;
  bool at_block_start = true;

  auto flush = [&] {
    const std::string text = detail::collapse_ws(current);
    if (!text.empty()) blocks.push_back({kind, text});
    current.clear();
    kind = BlockKind::Paragraph;
    block_has_text = false;
    at_block_start = true;
  };

  std::size_t i = 0;
  int newline_run = 0;
  while (i < content.size()) {
    const char c = content[i];
    if (c == '<') {
      // Comment?
      if (content.compare(i, 4, "<!--") == 0) {
        const std::size_t end = content.find("-->", i + 4);
        if (end == std::string_view::npos)
          throw MalformedMarkup("comment opened at byte " + std::to_string(i) +
                                " never closes");
        i = end + 3;
        continue;
      }
      const std::size_t close = content.find('>', i + 1);
      if (i + 1 < content.size() &&
          (std::isalpha(static_cast<unsigned char>(content[i + 1])) ||
           content[i + 1] == '/' || content[i + 1] == '!')) {
        if (close == std::string_view::npos)
          throw MalformedMarkup("tag opened at byte " + std::to_string(i) +
                                " never closes");
        std::string tag(content.substr(i + 1, close - i - 1));
        i = close + 1;
        const bool closing = !tag.empty() && tag[0] == '/';
        if (closing) tag.erase(0, 1);
        // Drop attributes and any self-closing slash.
        if (const auto sp = tag.find_first_of(" \t\n/"); sp != std::string::npos)
          tag = tag.substr(0, sp);

        if (detail::is_heading_tag(tag)) {
          flush();
          if (!closing) kind = BlockKind::Heading;
        } else if (detail::tag_name_is(tag, "p") ||
                   detail::tag_name_is(tag, "div") ||
                   detail::tag_name_is(tag, "blockquote") ||
                   detail::tag_name_is(tag, "table") ||
                   detail::tag_name_is(tag, "tr")) {
          flush();
        } else if (detail::tag_name_is(tag, "i") ||
                   detail::tag_name_is(tag, "em")) {
          // Italic starting a block marks the whole block procedural;
          // inline italics are plain formatting.
          if (!closing && !block_has_text && kind != BlockKind::Heading)
            kind = BlockKind::Procedural;
        } else if (detail::tag_name_is(tag, "br")) {
          current.push_back(' ');
        }
        // Unknown tags: inline formatting, skipped.
        continue;
      }
      // A lone '<' is literal text.
      current.push_back(c);
      block_has_text = true;
      ++i;
      continue;
    }
    if (c == '\n') {
      ++newline_run;
      if (newline_run >= 2) {
        flush();
        newline_run = 0;
        ++i;
        continue;
      }
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      newline_run = 0;
      block_has_text = true;
      at_block_start = false;
    }
    (void)at_block_start;
    current.push_back(c);
    ++i;
  }
  flush();
  return blocks;
}

// Sitting-date detection: first ISO date or prose date ("21 January 1919",
// with optional ordinal suffix and comma) found in any block.
inline std::optional<CalendarDate> find_sitting_date(
    const std::vector<Block>& blocks) {
  for (const auto& b : blocks) {
    const std::string& s = b.text;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        if (i + 10 <= s.size()) {
          if (auto d = parse_iso_date(std::string_view(s).substr(i, 10)); d)
            return d;
        }
        // day month year
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          ++j;
        if (j - i <= 2) {
          int day = std::stoi(s.substr(i, j - i));
          std::size_t k = j;
          if (k + 2 <= s.size() && std::isalpha(static_cast<unsigned char>(s[k]))) {
            const std::string suffix = s.substr(k, 2);
            if (suffix == "st" || suffix == "nd" || suffix == "rd" ||
                suffix == "th")
              k += 2;
          }
          while (k < s.size() && (s[k] == ' ' || s[k] == ',')) ++k;
          std::size_t m = k;
          while (m < s.size() && std::isalpha(static_cast<unsigned char>(s[m])))
            ++m;
          if (m > k) {
            if (auto month = month_from_name(s.substr(k, m - k)); month) {
              std::size_t y = m;
              while (y < s.size() && (s[y] == ' ' || s[y] == ',')) ++y;
              std::size_t ye = y;
              while (ye < s.size() &&
                     std::isdigit(static_cast<unsigned char>(s[ye])))
                ++ye;
              if (ye - y == 4) {
                CalendarDate d{std::stoi(s.substr(y, 4)), *month, day};
                if (is_valid_date(d)) return d;
              }
            }
          }
        }
        i = j;
      }
    }
  }
  return std::nullopt;
}

// ---- turn assembly ------------------------------------------------------

struct SpeakerTurn {
  std::string speaker_raw;
  std::optional<std::string> role;
  std::vector<std::string> paragraphs;
};

enum class SegmentKind { Heading, Turn, Procedural };

// Every visible text segment of the file, in source order; turns carry the
// index of the contribution they produced. Dropped segments stay here so
// the file's visible text is fully accounted for.
struct Segment {
  SegmentKind kind;
  std::string text;
  int contribution = -1;
};

struct FileReport {
  std::string source_path;
  std::size_t turns = 0;
  std::size_t headings = 0;
  std::size_t drops = 0;  // procedural lines and empty turns
  std::string error;      // empty on success
};

struct ParseResult {
  std::vector<Contribution> contributions;  // member_id absent
  std::vector<std::optional<std::string>> roles;  // parallel, office per turn
  std::vector<Segment> segments;
  FileReport report;
};

// Decodes file bytes: UTF-8, with the declared Latin-1 fallback.
inline std::string decode_transcript_bytes(std::string_view bytes) {
  if (is_valid_utf8(bytes)) return std::string(bytes);
  return latin1_to_utf8(bytes);
}

inline TranscriptFile read_transcript(std::string_view bytes,
                                      const std::string& source_path,
                                      std::optional<CalendarDate> manifest_date =
                                          std::nullopt) {
  bool blank = true;
  for (char c : bytes) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) throw EmptyFile(source_path + ": no visible content");
  TranscriptFile f;
  f.source_path = source_path;
  f.blocks = scan_blocks(decode_transcript_bytes(bytes));
  f.sitting_date = manifest_date ? manifest_date : find_sitting_date(f.blocks);
  if (!f.sitting_date)
    throw NoDateFound(source_path +
                      ": no sitting date in file and none in manifest");
  return f;
}

// Turns a scanned transcript into Contribution rows. Non-procedural
// speaker turns map one to one onto contributions; order follows the
// source. Turns never span a topic heading.
inline ParseResult parse_transcript(const TranscriptFile& f,
                                    const SpeakerTables& tables) {
  ParseResult result;
  result.report.source_path = f.source_path;

  std::string title;
  std::optional<SpeakerTurn> open_turn;
  std::vector<std::size_t> turn_segments;  // indexes into result.segments

  auto close_turn = [&] {
    if (!open_turn) return;
    std::string text;
    for (const auto& p : open_turn->paragraphs) {
      if (!text.empty()) text.push_back('\n');
      text += p;
    }
    if (text.empty()) {
      // A speaker line with no body is an interjection artifact.
      result.report.drops++;
      for (std::size_t si : turn_segments)
        result.segments[si].kind = SegmentKind::Procedural;
    } else {
      Contribution c;
      c.speaker_raw = open_turn->speaker_raw;
      c.debate_title = title;
      c.date = *f.sitting_date;
      c.text = text;
      c.word_count = simple_word_count(text);
      const int idx = static_cast<int>(result.contributions.size());
      for (std::size_t si : turn_segments) result.segments[si].contribution = idx;
      result.contributions.push_back(std::move(c));
      result.roles.push_back(open_turn->role);
      result.report.turns++;
    }
    open_turn.reset();
    turn_segments.clear();
  };

  for (const auto& block : f.blocks) {
    if (block.kind == BlockKind::Heading) {
      close_turn();
      title = block.text;
      result.report.headings++;
      result.segments.push_back({SegmentKind::Heading, block.text, -1});
      continue;
    }
    if (block.kind == BlockKind::Procedural) {
      result.report.drops++;
      result.segments.push_back({SegmentKind::Procedural, block.text, -1});
      continue;
    }
    const auto speaker = extract_speaker(block.text, tables);
    if (speaker) {
      close_turn();
      open_turn = SpeakerTurn{speaker->name, speaker->role, {}};
      const std::size_t colon = block.text.find(':');
      std::string body = detail::collapse_ws(
          std::string_view(block.text).substr(colon + 1));
      result.segments.push_back({SegmentKind::Turn, block.text, -1});
      turn_segments.push_back(result.segments.size() - 1);
      if (!body.empty()) open_turn->paragraphs.push_back(std::move(body));
      continue;
    }
    if (open_turn) {
      open_turn->paragraphs.push_back(block.text);
      result.segments.push_back({SegmentKind::Turn, block.text, -1});
      turn_segments.push_back(result.segments.size() - 1);
    } else {
      result.report.drops++;
      result.segments.push_back({SegmentKind::Procedural, block.text, -1});
    }
  }
  close_turn();
  return result;
}

inline ParseResult parse_file(std::string_view bytes,
                              const std::string& source_path,
                              const SpeakerTables& tables,
                              std::optional<CalendarDate> manifest_date =
                                  std::nullopt) {
  return parse_transcript(read_transcript(bytes, source_path, manifest_date),
                          tables);
}

// Per-file manifest: TSV (path, sitting_date).
inline std::map<std::string, CalendarDate> read_ingest_manifest(
    const std::string& path) {
  std::map<std::string, CalendarDate> out;
  for (const auto& row : tsv::read_table(path, {"path", "sitting_date"})) {
    out[row[0]] = require_iso_date(row[1], path);
  }
  return out;
}

}  // namespace hansard
