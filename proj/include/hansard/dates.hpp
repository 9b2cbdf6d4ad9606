#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "hansard/errors.hpp"

namespace hansard {

// Plain proleptic-Gregorian calendar date. Transcripts print dates in
// prose; everything downstream uses ISO-8601.
struct CalendarDate {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  friend auto operator<=>(const CalendarDate&, const CalendarDate&) = default;
};

inline bool is_leap_year(int y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline int days_in_month(int year, int month) {
  static constexpr std::array<int, 13> d = {0, 31, 28, 31, 30, 31, 30,
                                            31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return d[static_cast<std::size_t>(month)];
}

inline bool is_valid_date(const CalendarDate& d) {
  return d.year >= 1 && d.month >= 1 && d.month <= 12 && d.day >= 1 &&
         d.day <= days_in_month(d.year, d.month);
}

inline std::string to_iso(const CalendarDate& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

// Strict ISO-8601 "YYYY-MM-DD".
inline std::optional<CalendarDate> parse_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  CalendarDate d;
  auto num = [&](std::string_view part, int& out) {
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && p == part.data() + part.size();
  };
  if (!num(s.substr(0, 4), d.year) || !num(s.substr(5, 2), d.month) ||
      !num(s.substr(8, 2), d.day))
    return std::nullopt;
  if (!is_valid_date(d)) return std::nullopt;
  return d;
}

inline CalendarDate require_iso_date(std::string_view s,
                                     const std::string& context) {
  auto d = parse_iso_date(s);
  if (!d) throw InvariantViolation(context + ": bad date '" + std::string(s) + "'");
  return *d;
}

inline std::optional<int> month_from_name(std::string_view name) {
  static constexpr std::array<std::string_view, 12> kNames = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  std::string lower;
  lower.reserve(name.size());
  for (char c : name)
    lower.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c);
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (lower == kNames[i]) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

}  // namespace hansard
