#pragma once

// QMAT v1 text format:
//   QMAT 1
//   <rows> <cols>
//   <re> <im>        (rows*cols lines, row-major)

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qtrace/errors.hpp"
#include "qtrace/matrix.hpp"

namespace qtrace {

namespace detail {

/// Shortest round-trip decimal representation, locale independent.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Num>
Num parse_number(std::string_view tok, std::size_t line_no) {
  Num value{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("QMAT line " + std::to_string(line_no) + ": cannot parse '" +
                     std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

inline ComplexMatrix read_qmat(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&](std::string_view what) -> std::string_view {
    if (!std::getline(in, line)) {
      throw ParseError("QMAT: unexpected end of input while reading " + std::string(what));
    }
    ++line_no;
    return detail::trim(line);
  };

  if (next("header") != "QMAT 1") {
    throw ParseError("QMAT: line 1 must be 'QMAT 1'");
  }
  const auto shape = detail::split_ws(next("shape"));
  if (shape.size() != 2) throw ParseError("QMAT line 2: expected '<rows> <cols>'");
  const auto rows = detail::parse_number<std::size_t>(shape[0], line_no);
  const auto cols = detail::parse_number<std::size_t>(shape[1], line_no);
  if (rows == 0 || cols == 0) throw ParseError("QMAT line 2: dimensions must be positive");

  const std::size_t count = detail::checked_mul(rows, cols);
  std::vector<Complex> data;
  data.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto toks = detail::split_ws(next("matrix entry"));
    if (toks.size() != 2) {
      throw ParseError("QMAT line " + std::to_string(line_no) + ": expected '<re> <im>'");
    }
    data.emplace_back(detail::parse_number<double>(toks[0], line_no),
                      detail::parse_number<double>(toks[1], line_no));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) {
      throw ParseError("QMAT line " + std::to_string(line_no) + ": more than " +
                       std::to_string(count) + " entries");
    }
  }
  return ComplexMatrix(rows, cols, std::move(data));
}

inline ComplexMatrix read_qmat(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("QMAT: cannot open " + path.string());
  return read_qmat(in);
}

inline void write_qmat(std::ostream& out, const ComplexMatrix& m) {
  out << "QMAT 1\n" << m.rows() << ' ' << m.cols() << '\n';
  for (const auto& z : m.data()) {
    out << detail::format_double(z.real()) << ' ' << detail::format_double(z.imag()) << '\n';
  }
}

inline std::string to_qmat_string(const ComplexMatrix& m) {
  std::ostringstream os;
  write_qmat(os, m);
  return os.str();
}

/// Writes `contents` next to `path` and renames it into place, so readers
/// never observe a partially written file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::system_error(EIO, std::generic_category(), "write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

inline void write_qmat(const std::filesystem::path& path, const ComplexMatrix& m) {
  write_file_atomic(path, to_qmat_string(m));
}

}  // namespace qtrace
