#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hansard/errors.hpp"

// All tabular interchange in this toolkit is tab-separated UTF-8 with LF
// line endings and a header row. Field escaping: backslash, tab, LF and CR
// are written as \\ \t \n \r so any text body survives a round trip.

namespace hansard {
namespace tsv {

inline std::string escape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string unescape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\' || i + 1 == field.size()) {
      out.push_back(field[i]);
      continue;
    }
    switch (field[++i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default:
        out.push_back('\\');
        out.push_back(field[i]);
    }
  }
  return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back('\t');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

inline std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      fields.push_back(unescape(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

// Splits file content into lines on LF, tolerating a trailing CR per line
// and a missing final newline.
inline std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= content.size(); ++i) {
    if (i == content.size() || content[i] == '\n') {
      std::string_view line = content.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (i == content.size() && line.empty()) break;
      lines.emplace_back(line);
      start = i + 1;
    }
  }
  return lines;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path);
}

// Reads a TSV file with a header row; checks the header matches.
inline std::vector<std::vector<std::string>> read_table(
    const std::string& path, const std::vector<std::string>& expected_header) {
  const std::string content = read_file(path);
  const std::vector<std::string> lines = split_lines(content);
  if (lines.empty()) throw Error("empty table: " + path);
  const auto header = split_row(lines[0]);
  if (header != expected_header) {
    throw Error("unexpected header in " + path + ": '" + lines[0] + "'");
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    rows.push_back(split_row(lines[i]));
    if (rows.back().size() != expected_header.size()) {
      throw Error(path + " row " + std::to_string(i + 1) +
                  ": expected " + std::to_string(expected_header.size()) +
                  " fields, got " + std::to_string(rows.back().size()));
    }
  }
  return rows;
}

}  // namespace tsv
}  // namespace hansard
