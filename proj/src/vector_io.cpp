// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/vector_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "g4s/error.hpp"
#include "g4s/matrix_market.hpp"

namespace g4s {

namespace {

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

ParsedVector from_matrix(const ParsedMatrix& m) {
  const MatrixDescriptor& desc = parsed_descriptor(m);
  if (desc.rows != 1 && desc.cols != 1) {
    throw_parse("vector file holds a " + std::to_string(desc.rows) + "x" +
                std::to_string(desc.cols) + " matrix, expected one column");
  }
  std::uint64_t n = desc.rows * desc.cols;
  return std::visit(
      [n](const auto& coo) -> ParsedVector {
        using T = std::decay_t<decltype(coo.entries()[0].value)>;
        std::vector<T> v(n, T{});
        for (const auto& e : coo.entries()) {
          v[e.row * coo.cols() + e.col] = e.value;
        }
        return v;
      },
      m);
}

}  // namespace

ParsedVector parse_vector_text(const std::string& text) {
  if (text.rfind("%%MatrixMarket", 0) == 0) {
    return from_matrix(parse_matrix_market(text));
  }
  std::istringstream in(text);
  std::string line;
  std::vector<double> reals;
  std::vector<Complex> complexes;
  bool complex_mode = false;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a) || a[0] == '%') continue;
    bool two = static_cast<bool>(fields >> b);
    if (two && (fields >> extra)) {
      throw_parse("vector line " + std::to_string(line_no) +
                  " has more than two values");
    }
    double re = 0.0, im = 0.0;
    if (!parse_double(a, re) || (two && !parse_double(b, im))) {
      throw_parse("vector line " + std::to_string(line_no) +
                  " is not numeric: " + line);
    }
    if (two && !complex_mode) {
      complex_mode = true;
      for (double r : reals) complexes.emplace_back(r, 0.0);
      reals.clear();
    }
    if (complex_mode) {
      complexes.emplace_back(re, im);
    } else {
      reals.push_back(re);
    }
  }
  if (complex_mode) return complexes;
  return reals;
}

ParsedVector read_vector_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot read vector file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_vector_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string format_scalar(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_scalar(const Complex& v) {
  return format_scalar(v.real()) + " " + format_scalar(v.imag());
}

std::string format_vector(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    out += format_scalar(x);
    out += '\n';
  }
  return out;
}

std::string format_vector(const std::vector<Complex>& v) {
  std::string out;
  for (const Complex& x : v) {
    out += format_scalar(x);
    out += '\n';
  }
  return out;
}

std::string format_vector(const ParsedVector& v) {
  return std::visit([](const auto& vec) { return format_vector(vec); }, v);
}

void write_vector_file(const std::string& path, const ParsedVector& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_validation("cannot write vector file: " + path);
  out << format_vector(v);
  if (!out) throw_validation("failed writing vector file: " + path);
}

}  // namespace g4s
