// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "g4s/error.hpp"

namespace g4s {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw_parse(message + " (line " + std::to_string(line) + ")");
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_number(const std::string& tok, std::size_t line) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    fail(line, "expected a number, got '" + tok + "'");
  }
  return v;
}

std::uint64_t parse_index(const std::string& tok, std::size_t line) {
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(line, "expected a positive integer index, got '" + tok + "'");
    }
  }
  errno = 0;
  std::uint64_t v = std::strtoull(tok.c_str(), nullptr, 10);
  if (errno != 0) fail(line, "index '" + tok + "' out of range");
  if (v == 0) fail(line, "indices are 1-based, got 0");
  return v;
}

enum class Field { Real, Integer, Complex, Pattern };
enum class Symmetry { General, Symmetric, Skew, Hermitian };

struct Header {
  bool coordinate = true;
  Field field = Field::Real;
  Symmetry symmetry = Symmetry::General;
};

Header parse_header(const std::string& line) {
  std::vector<std::string> tok = split_tokens(line);
  if (tok.size() != 5 || lower(tok[0]) != "%%matrixmarket" || lower(tok[1]) != "matrix") {
    fail(1, "malformed header, expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  }
  Header h;
  std::string format = lower(tok[2]);
  if (format == "coordinate") {
    h.coordinate = true;
  } else if (format == "array") {
    h.coordinate = false;
  } else {
    fail(1, "unknown format '" + tok[2] + "'");
  }
  std::string field = lower(tok[3]);
  if (field == "real") {
    h.field = Field::Real;
  } else if (field == "integer") {
    h.field = Field::Integer;
  } else if (field == "complex") {
    h.field = Field::Complex;
  } else if (field == "pattern") {
    h.field = Field::Pattern;
  } else {
    fail(1, "unknown field '" + tok[3] + "'");
  }
  std::string sym = lower(tok[4]);
  if (sym == "general") {
    h.symmetry = Symmetry::General;
  } else if (sym == "symmetric") {
    h.symmetry = Symmetry::Symmetric;
  } else if (sym == "skew-symmetric") {
    h.symmetry = Symmetry::Skew;
  } else if (sym == "hermitian") {
    h.symmetry = Symmetry::Hermitian;
  } else {
    fail(1, "unknown symmetry '" + tok[4] + "'");
  }
  if (h.field == Field::Pattern && !h.coordinate) {
    fail(1, "pattern field requires coordinate format");
  }
  if (h.symmetry == Symmetry::Hermitian && h.field != Field::Complex) {
    fail(1, "hermitian symmetry requires the complex field");
  }
  if (h.symmetry == Symmetry::Skew && h.field == Field::Pattern) {
    fail(1, "skew-symmetric symmetry cannot use the pattern field");
  }
  return h;
}

MatrixKind kind_of(Symmetry s) {
  switch (s) {
    case Symmetry::General: return MatrixKind::General;
    case Symmetry::Symmetric: return MatrixKind::Symmetric;
    case Symmetry::Skew: return MatrixKind::SkewSymmetric;
    case Symmetry::Hermitian: return MatrixKind::Hermitian;
  }
  return MatrixKind::General;
}

struct NumberedLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Lines after the header, with comments and blanks removed.
std::vector<NumberedLine> content_lines(std::istream& in) {
  std::vector<NumberedLine> out;
  std::string line;
  std::size_t number = 1;  // the header was line 1
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '%') continue;
    std::vector<std::string> tokens = split_tokens(line);
    if (tokens.empty()) continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

template <typename T>
void check_region(Symmetry sym, std::uint64_t i, std::uint64_t j, const T&,
                  std::size_t line) {
  if (sym == Symmetry::Symmetric || sym == Symmetry::Hermitian) {
    if (i < j) fail(line, "symmetric storage requires row >= column");
  } else if (sym == Symmetry::Skew) {
    if (i <= j) fail(line, "skew-symmetric storage requires row > column");
  }
}

void check_duplicates(std::vector<std::pair<std::uint64_t, std::uint64_t>> seen,
                      const std::vector<std::size_t>& lines) {
  std::vector<std::size_t> order(seen.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return seen[a] != seen[b] ? seen[a] < seen[b] : lines[a] < lines[b];
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (seen[order[k]] == seen[order[k - 1]]) {
      fail(lines[order[k]],
           "duplicate entry at (" + std::to_string(seen[order[k]].first) + ", " +
               std::to_string(seen[order[k]].second) + ")");
    }
  }
}

template <typename T>
ParsedMatrix build(MatrixDescriptor desc, std::vector<Entry<T>> entries,
                   std::size_t size_line) {
  try {
    return CooMatrix<T>(desc, std::move(entries));
  } catch (const Error& e) {
    fail(size_line, e.what());
  }
}

ParsedMatrix parse_coordinate(const Header& h, const std::vector<NumberedLine>& lines) {
  if (lines.empty()) fail(1, "missing size line");
  const NumberedLine& size_line = lines[0];
  if (size_line.tokens.size() != 3) {
    fail(size_line.number, "coordinate size line must be 'rows cols nnz'");
  }
  std::uint64_t rows = parse_index(size_line.tokens[0], size_line.number);
  std::uint64_t cols = parse_index(size_line.tokens[1], size_line.number);
  std::uint64_t nnz =
      size_line.tokens[2] == "0"
          ? 0
          : parse_index(size_line.tokens[2], size_line.number);
  if (lines.size() - 1 != nnz) {
    fail(size_line.number, "size line promises " + std::to_string(nnz) +
                               " entries but the file has " +
                               std::to_string(lines.size() - 1));
  }

  std::size_t value_tokens;
  switch (h.field) {
    case Field::Pattern: value_tokens = 0; break;
    case Field::Complex: value_tokens = 2; break;
    default: value_tokens = 1; break;
  }

  MatrixDescriptor desc;
  desc.rows = rows;
  desc.cols = cols;
  desc.kind = kind_of(h.symmetry);
  desc.scalar = h.field == Field::Complex ? ScalarKind::Complex64x2 : ScalarKind::Real64;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> positions;
  std::vector<std::size_t> position_lines;
  positions.reserve(nnz);
  position_lines.reserve(nnz);

  std::vector<Entry<double>> real_entries;
  std::vector<Entry<Complex>> complex_entries;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const NumberedLine& l = lines[k];
    if (l.tokens.size() != 2 + value_tokens) {
      if (h.field == Field::Real && l.tokens.size() == 4) {
        fail(l.number, "complex value in a real file");
      }
      fail(l.number, "entry line has " + std::to_string(l.tokens.size()) +
                         " fields, expected " + std::to_string(2 + value_tokens));
    }
    std::uint64_t i = parse_index(l.tokens[0], l.number);
    std::uint64_t j = parse_index(l.tokens[1], l.number);
    if (i > rows || j > cols) {
      fail(l.number, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") outside a " + std::to_string(rows) + " x " +
                         std::to_string(cols) + " matrix");
    }
    check_region(h.symmetry, i, j, 0, l.number);
    positions.emplace_back(i, j);
    position_lines.push_back(l.number);
    if (h.field == Field::Complex) {
      double re = parse_number(l.tokens[2], l.number);
      double im = parse_number(l.tokens[3], l.number);
      if (h.symmetry == Symmetry::Hermitian && i == j && im != 0.0) {
        fail(l.number, "hermitian diagonal entry has a nonzero imaginary part");
      }
      complex_entries.push_back({i - 1, j - 1, Complex(re, im)});
    } else {
      double v = h.field == Field::Pattern ? 1.0 : parse_number(l.tokens[2], l.number);
      real_entries.push_back({i - 1, j - 1, v});
    }
  }

  check_duplicates(std::move(positions), position_lines);

  if (h.field == Field::Complex) {
    return build(desc, std::move(complex_entries), size_line.number);
  }
  return build(desc, std::move(real_entries), size_line.number);
}

ParsedMatrix parse_array(const Header& h, const std::vector<NumberedLine>& lines) {
  if (lines.empty()) fail(1, "missing size line");
  const NumberedLine& size_line = lines[0];
  if (size_line.tokens.size() != 2) {
    fail(size_line.number, "array size line must be 'rows cols'");
  }
  std::uint64_t rows = parse_index(size_line.tokens[0], size_line.number);
  std::uint64_t cols = parse_index(size_line.tokens[1], size_line.number);
  if (h.symmetry != Symmetry::General && rows != cols) {
    fail(size_line.number, "symmetric array storage requires a square matrix");
  }

  // Flatten the remaining tokens, remembering the line each came from.
  std::vector<double> numbers;
  std::vector<std::size_t> number_lines;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    for (const std::string& tok : lines[k].tokens) {
      numbers.push_back(parse_number(tok, lines[k].number));
      number_lines.push_back(lines[k].number);
    }
  }

  bool complex = h.field == Field::Complex;
  std::size_t per_value = complex ? 2 : 1;

  // Column major stored positions.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> slots;
  for (std::uint64_t j = 1; j <= cols; ++j) {
    std::uint64_t i0 = 1;
    if (h.symmetry == Symmetry::Symmetric || h.symmetry == Symmetry::Hermitian) i0 = j;
    if (h.symmetry == Symmetry::Skew) i0 = j + 1;
    for (std::uint64_t i = i0; i <= rows; ++i) slots.emplace_back(i, j);
  }
  if (numbers.size() != slots.size() * per_value) {
    fail(size_line.number, "array data has " + std::to_string(numbers.size()) +
                               " numbers, expected " +
                               std::to_string(slots.size() * per_value));
  }

  MatrixDescriptor desc;
  desc.rows = rows;
  desc.cols = cols;
  desc.kind = kind_of(h.symmetry);
  desc.scalar = complex ? ScalarKind::Complex64x2 : ScalarKind::Real64;

  if (complex) {
    std::vector<Entry<Complex>> entries;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      Complex v(numbers[2 * k], numbers[2 * k + 1]);
      auto [i, j] = slots[k];
      if (h.symmetry == Symmetry::Hermitian && i == j && v.imag() != 0.0) {
        fail(number_lines[2 * k + 1], "hermitian diagonal entry has a nonzero imaginary part");
      }
      entries.push_back({i - 1, j - 1, v});
    }
    return build(desc, std::move(entries), size_line.number);
  }
  std::vector<Entry<double>> entries;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    auto [i, j] = slots[k];
    entries.push_back({i - 1, j - 1, numbers[k]});
  }
  return build(desc, std::move(entries), size_line.number);
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct WireEntry {
  std::uint64_t row, col;
  double re, im;
};

// Maps a storage kind onto the symmetry header it round trips through, and
// rewrites upper packed triangles as the lower triangle the format expects.
template <typename T>
void plan_write_impl(const CooMatrix<T>& m, std::string& symmetry,
                     std::vector<WireEntry>& wire) {
  MatrixKind kind = m.desc().kind;
  bool mirror_to_lower = false;
  switch (kind) {
    case MatrixKind::Symmetric:
    case MatrixKind::PackedSymmetric:
      symmetry = "symmetric";
      mirror_to_lower = kind == MatrixKind::PackedSymmetric && m.desc().uplo == Uplo::Upper;
      break;
    case MatrixKind::SkewSymmetric:
      symmetry = "skew-symmetric";
      break;
    case MatrixKind::Hermitian:
    case MatrixKind::HermitianBanded:
    case MatrixKind::HermitianPacked:
      symmetry = "hermitian";
      mirror_to_lower = kind == MatrixKind::HermitianPacked && m.desc().uplo == Uplo::Upper;
      break;
    default:
      symmetry = "general";
      break;
  }
  for (const Entry<T>& e : m.entries()) {
    std::uint64_t i = e.row, j = e.col;
    T v = e.value;
    if (mirror_to_lower && j > i) {
      std::swap(i, j);
      if (kind_is_hermitian(kind)) v = conj_value(v);
    }
    if constexpr (is_complex_v<T>) {
      wire.push_back({i, j, v.real(), v.imag()});
    } else {
      wire.push_back({i, j, v, 0.0});
    }
  }
  std::sort(wire.begin(), wire.end(), [](const WireEntry& a, const WireEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

template <typename T>
std::string write_impl(const CooMatrix<T>& m) {
  std::string symmetry;
  std::vector<WireEntry> wire;
  wire.reserve(m.nnz());
  plan_write_impl(m, symmetry, wire);
  std::string field = is_complex_v<T> ? "complex" : "real";

  std::string out;
  out += "%%MatrixMarket matrix coordinate " + field + " " + symmetry + "\n";
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
         std::to_string(wire.size()) + "\n";
  for (const WireEntry& e : wire) {
    out += std::to_string(e.row + 1) + " " + std::to_string(e.col + 1) + " " +
           format_value(e.re);
    if (is_complex_v<T>) out += " " + format_value(e.im);
    out += "\n";
  }
  return out;
}

}  // namespace

ParsedMatrix read_matrix_market(std::istream& in) {
  std::string header_line;
  if (!std::getline(in, header_line)) fail(1, "empty input");
  if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();
  Header h = parse_header(header_line);
  std::vector<NumberedLine> lines = content_lines(in);
  return h.coordinate ? parse_coordinate(h, lines) : parse_array(h, lines);
}

ParsedMatrix parse_matrix_market(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

ParsedMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_parse("cannot open '" + path + "'");
  return read_matrix_market(in);
}

std::string write_matrix_market(const CooMatrix<double>& m) { return write_impl(m); }
std::string write_matrix_market(const CooMatrix<Complex>& m) { return write_impl(m); }

std::string write_matrix_market(const ParsedMatrix& m) {
  return std::visit([](const auto& v) { return write_impl(v); }, m);
}

void write_matrix_market_file(const std::string& path, const ParsedMatrix& m) {
  std::ofstream out(path);
  if (!out) throw_parse("cannot open '" + path + "' for writing");
  out << write_matrix_market(m);
  if (!out) throw_parse("failed writing '" + path + "'");
}

ScalarKind parsed_scalar_kind(const ParsedMatrix& m) {
  return std::visit([](const auto& v) { return v.desc().scalar; }, m);
}

const MatrixDescriptor& parsed_descriptor(const ParsedMatrix& m) {
  return std::visit([](const auto& v) -> const MatrixDescriptor& { return v.desc(); }, m);
}

}  // namespace g4s
