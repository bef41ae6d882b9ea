#include "l1rank/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "l1rank/error.hpp"

namespace l1rank {

namespace {

std::string where(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  // A single trailing newline does not make an extra (empty) line.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::size_t parse_count(std::string_view token, std::size_t line, std::size_t col) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError("matrix header: expected a non-negative integer at " + where(line, col));
  }
  return value;
}

}  // namespace

BitMatrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("matrix: missing header line \"m n\"");

  const std::string_view header = lines[0];
  const std::size_t sp = header.find(' ');
  if (sp == std::string_view::npos) {
    throw ParseError("matrix header: expected \"m n\" at " + where(1, 1));
  }
  const std::size_t rows = parse_count(header.substr(0, sp), 1, 1);
  const std::size_t cols = parse_count(header.substr(sp + 1), 1, sp + 2);

  if (lines.size() - 1 != rows) {
    throw ParseError("matrix: header declares " + std::to_string(rows) + " rows but found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<BitVec> data;
  data.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string_view line = lines[r + 1];
    BitVec row(cols);
    for (std::size_t c = 0; c < line.size(); ++c) {
      const char ch = line[c];
      if (ch != '0' && ch != '1') {
        throw ParseError("matrix: invalid character '" + std::string(1, ch) + "' at " +
                         where(r + 2, c + 1));
      }
      if (c < cols && ch == '1') row.set(c);
    }
    if (line.size() != cols) {
      throw ParseError("matrix: expected " + std::to_string(cols) + " characters, found " +
                       std::to_string(line.size()) + " at " + where(r + 2, 1));
    }
    data.push_back(std::move(row));
  }
  return BitMatrix::from_rows(std::move(data), cols);
}

BitMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

std::string format_matrix(const BitMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (const auto& row : m.row_vectors()) {
    out += row.to_string();
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::string& path, const BitMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write matrix file " + path);
  out << format_matrix(m);
}

}  // namespace l1rank
