#include <catch2/catch_amalgamated.hpp>

#include "hansard/ingest.hpp"
#include "test_util.hpp"

using namespace hansard;

namespace {

const SpeakerTables& tables() {
  static const SpeakerTables t = load_speaker_tables(
      testutil::data_dir() + "/honorifics.txt",
      testutil::data_dir() + "/roles.tsv");
  return t;
}

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

const char* kSimpleFile =
    "<html>\n"
    "<p>Dáil Éireann, 21 January 1919.</p>\n"
    "<h2>Democratic Programme</h2>\n"
    "<p>Mr. J. Lynch: I move the adoption of the programme.</p>\n"
    "<p>Mr. P. Murphy: I second that motion with conviction.</p>\n"
    "<p>Mr. T. Kelly: The house should consider the details first.</p>\n"
    "</html>\n";

}  // namespace

TEST_CASE("speaker extraction strips honorifics") {
  const auto ref = extract_speaker("Mr. J. Lynch: I move that the house rise.",
                                   tables());
  REQUIRE(ref.has_value());
  CHECK(ref->name == "J. Lynch");
  CHECK_FALSE(ref->role.has_value());
}

TEST_CASE("procedural lines have no speaker") {
  CHECK_FALSE(extract_speaker("The Dáil adjourned at 10 p.m.", tables())
                  .has_value());
  CHECK_FALSE(extract_speaker("Question put: agreed to.", tables()).has_value());
  CHECK_FALSE(extract_speaker("Resolved: That the Bill be read.", tables())
                  .has_value());
  CHECK_FALSE(extract_speaker("", tables()).has_value());
}

TEST_CASE("an office with a bracketed name yields the person plus the role") {
  const auto ref = extract_speaker(
      "Minister for Finance (Mr. C. McCreevy): I am pleased to announce.",
      tables());
  REQUIRE(ref.has_value());
  CHECK(ref->name == "C. McCreevy");
  REQUIRE(ref->role.has_value());
  CHECK(*ref->role == "Minister for Finance");
}

TEST_CASE("a bare office is kept verbatim and annotated") {
  const auto ref = extract_speaker("An Taoiseach: The order of business is.",
                                   tables());
  REQUIRE(ref.has_value());
  CHECK(ref->name == "An Taoiseach");
  REQUIRE(ref->role.has_value());
  CHECK(*ref->role == "An Taoiseach");
}

TEST_CASE("one heading, three turns, one shared title") {
  const ParseResult r = parse_file(kSimpleFile, "simple.html", tables());
  REQUIRE(r.contributions.size() == 3);
  for (const auto& c : r.contributions) {
    CHECK(c.debate_title == "Democratic Programme");
    CHECK(c.date == CalendarDate{1919, 1, 21});
  }
  CHECK(r.contributions[0].speaker_raw == "J. Lynch");
  CHECK(r.contributions[1].speaker_raw == "P. Murphy");
  CHECK(r.contributions[2].speaker_raw == "T. Kelly");
  CHECK(r.report.turns == 3);
  CHECK(r.report.headings == 1);
}

TEST_CASE("titles come from the nearest preceding heading") {
  const std::string file =
      "<p>1 March 1930.</p>\n"
      "<h2>First Topic</h2>\n"
      "<p>Mr. A. Burke: Point one.</p>\n"
      "<p>Mr. B. Walsh: Point two.</p>\n"
      "<h2>Second Topic</h2>\n"
      "<p>Mr. C. Daly: Point three.</p>\n";
  const ParseResult r = parse_file(file, "titles.html", tables());
  REQUIRE(r.contributions.size() == 3);
  CHECK(r.contributions[0].debate_title == "First Topic");
  CHECK(r.contributions[1].debate_title == "First Topic");
  CHECK(r.contributions[2].debate_title == "Second Topic");
}

TEST_CASE("no parsable date anywhere is NoDateFound") {
  const std::string file = "<h2>Some Topic</h2>\n<p>Mr. A. Burke: Hello.</p>\n";
  REQUIRE_THROWS_AS(parse_file(file, "nodate.html", tables()), NoDateFound);
  // A manifest date rescues the same file.
  const ParseResult r =
      parse_file(file, "nodate.html", tables(), CalendarDate{1950, 2, 3});
  REQUIRE(r.contributions.size() == 1);
  CHECK(r.contributions[0].date == CalendarDate{1950, 2, 3});
}

TEST_CASE("empty and whitespace-only files are EmptyFile") {
  REQUIRE_THROWS_AS(parse_file("", "empty.html", tables()), EmptyFile);
  REQUIRE_THROWS_AS(parse_file("  \n \t ", "blank.html", tables()), EmptyFile);
}

TEST_CASE("an unterminated tag is beyond recovery") {
  REQUIRE_THROWS_AS(
      parse_file("<p>1 March 1930.</p><p unterminated", "bad.html", tables()),
      MalformedMarkup);
  // Stray close tags and unknown tags recover fine.
  const ParseResult r = parse_file(
      "<p>1 March 1930.</p></h2><p>Mr. A. Burke: Fine <span>text</span>.</p>",
      "odd.html", tables());
  CHECK(r.contributions.size() == 1);
  CHECK(r.contributions[0].text == "Fine text.");
}

TEST_CASE("continuation paragraphs extend the open turn") {
  const std::string file =
      "<p>2 April 1965.</p>\n"
      "<h2>Estimates</h2>\n"
      "<p>Mr. A. Burke: First paragraph.</p>\n"
      "<p>Second paragraph of the same speech.</p>\n"
      "<p>Mr. B. Walsh: Another speaker now.</p>\n";
  const ParseResult r = parse_file(file, "cont.html", tables());
  REQUIRE(r.contributions.size() == 2);
  CHECK(r.contributions[0].text ==
        "First paragraph.\nSecond paragraph of the same speech.");
  CHECK(r.contributions[0].word_count == 8);
}

TEST_CASE("italic blocks are procedural and never join a turn") {
  const std::string file =
      "<p>2 April 1965.</p>\n"
      "<h2>Estimates</h2>\n"
      "<p>Mr. A. Burke: Before the interruption.</p>\n"
      "<p><i>(Interruptions).</i></p>\n"
      "<p>And after it, still the same turn.</p>\n"
      "<p><i>The Dáil adjourned at 10 p.m.</i></p>\n";
  const ParseResult r = parse_file(file, "italic.html", tables());
  REQUIRE(r.contributions.size() == 1);
  CHECK(r.contributions[0].text ==
        "Before the interruption.\nAnd after it, still the same turn.");
  CHECK(r.report.drops >= 3);  // date line, interruptions, adjournment
}

TEST_CASE("visible text is conserved across turns and drops") {
  const std::string file =
      "<p>2 April 1965.</p>\n"
      "<h2>Estimates</h2>\n"
      "<p>Mr. A. Burke: One two three.</p>\n"
      "<p><i>(Interruptions).</i></p>\n"
      "<p>Four five.</p>\n"
      "<h2>Other Business</h2>\n"
      "<p>Stray paragraph before any speaker is procedural.</p>\n"
      "<p>Mr. B. Walsh: Six seven.</p>\n";
  const ParseResult r = parse_file(file, "conserve.html", tables());

  std::string from_segments;
  for (const auto& seg : r.segments) from_segments += seg.text + " ";
  const std::string visible =
      "2 April 1965. Estimates Mr. A. Burke: One two three. (Interruptions). "
      "Four five. Other Business Stray paragraph before any speaker is "
      "procedural. Mr. B. Walsh: Six seven.";
  CHECK(normalize_ws(from_segments) == normalize_ws(visible));

  // Turn segments reconstruct each contribution's text (minus the name).
  REQUIRE(r.contributions.size() == 2);
  CHECK(r.contributions[0].text == "One two three.\nFour five.");
  CHECK(r.contributions[1].text == "Six seven.");
}

TEST_CASE("parsing is idempotent and order preserving") {
  const ParseResult a = parse_file(kSimpleFile, "x.html", tables());
  const ParseResult b = parse_file(kSimpleFile, "x.html", tables());
  REQUIRE(a.contributions.size() == b.contributions.size());
  for (std::size_t i = 0; i < a.contributions.size(); ++i)
    CHECK(a.contributions[i] == b.contributions[i]);
  // Order equals source order.
  CHECK(a.contributions[0].speaker_raw == "J. Lynch");
  CHECK(a.contributions[2].speaker_raw == "T. Kelly");
}

TEST_CASE("bytes that are not UTF-8 fall back to Latin-1") {
  std::string file =
      "<p>5 May 1971.</p><h2>Teanga</h2><p>Mr. Se\xe1n \xd3 Briain: T\xe1 "
      "go maith.</p>";  // Latin-1 encoded fadas
  REQUIRE_FALSE(is_valid_utf8(file));
  const ParseResult r = parse_file(file, "latin1.html", tables());
  REQUIRE(r.contributions.size() == 1);
  CHECK(r.contributions[0].speaker_raw == "Seán Ó Briain");
  CHECK(r.contributions[0].text == "Tá go maith.");
}

TEST_CASE("dates parse from several prose shapes") {
  auto date_of = [&](const std::string& text) {
    const auto blocks = scan_blocks(text);
    const auto d = find_sitting_date(blocks);
    REQUIRE(d.has_value());
    return *d;
  };
  CHECK(date_of("<p>Wednesday, 5 December 2007.</p>") ==
        CalendarDate{2007, 12, 5});
  CHECK(date_of("<p>Volume 1 - 21st January, 1919</p>") ==
        CalendarDate{1919, 1, 21});
  CHECK(date_of("<p>sitting of 1919-01-21 resumed</p>") ==
        CalendarDate{1919, 1, 21});
}

TEST_CASE("ingest manifest supplies dates by path") {
  testutil::TempDir tmp("manifest");
  testutil::spit(tmp.file("m.tsv"),
                 "path\tsitting_date\nfoo.html\t1933-07-12\n");
  const auto dates = read_ingest_manifest(tmp.file("m.tsv"));
  REQUIRE(dates.size() == 1);
  CHECK(dates.at("foo.html") == CalendarDate{1933, 7, 12});
}

TEST_CASE("turns never span a topic heading") {
  const std::string file =
      "<p>2 April 1965.</p>\n"
      "<h2>First</h2>\n"
      "<p>Mr. A. Burke: Speaking on first.</p>\n"
      "<h2>Second</h2>\n"
      "<p>Continuation-looking paragraph under a new heading.</p>\n";
  const ParseResult r = parse_file(file, "span.html", tables());
  // The trailing paragraph has no speaker and the heading closed the turn.
  REQUIRE(r.contributions.size() == 1);
  CHECK(r.contributions[0].debate_title == "First");
  CHECK(r.contributions[0].text == "Speaking on first.");
}
