// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/detect.hpp"

#include <cstdlib>
#include <sstream>

#include "g4s/error.hpp"

namespace g4s {
namespace {

bool parse_real_token(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

// Accepts "(a,b)" and "a+bi" style spellings, including pure imaginary
// forms like "2i", "-i" and "i".
bool parse_complex_token(const std::string& tok, Complex& out) {
  if (tok.size() >= 5 && tok.front() == '(' && tok.back() == ')') {
    std::size_t comma = tok.find(',');
    if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos) {
      return false;
    }
    double re, im;
    if (!parse_real_token(tok.substr(1, comma - 1), re)) return false;
    if (!parse_real_token(tok.substr(comma + 1, tok.size() - comma - 2), im)) return false;
    out = Complex(re, im);
    return true;
  }
  if (tok.size() >= 1 && (tok.back() == 'i' || tok.back() == 'I')) {
    std::string body = tok.substr(0, tok.size() - 1);
    // Split at the last sign that is neither leading nor part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') &&
          body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    double re = 0.0, im;
    std::string im_text;
    if (split == std::string::npos) {
      im_text = body;
    } else {
      if (!parse_real_token(body.substr(0, split), re)) return false;
      im_text = body.substr(split);
    }
    if (im_text.empty() || im_text == "+") {
      im = 1.0;
    } else if (im_text == "-") {
      im = -1.0;
    } else if (!parse_real_token(im_text, im)) {
      return false;
    }
    out = Complex(re, im);
    return true;
  }
  return false;
}

struct Token {
  bool complex = false;
  Complex value{};
};

bool parse_token(const std::string& tok, Token& out) {
  double re;
  if (parse_real_token(tok, re)) {
    out = {false, Complex(re, 0.0)};
    return true;
  }
  Complex c;
  if (parse_complex_token(tok, c)) {
    out = {true, c};
    return true;
  }
  return false;
}

std::vector<std::vector<Token>> tokenize(const std::vector<std::string>& raw_rows) {
  std::vector<std::vector<Token>> rows;
  std::vector<std::size_t> origin;  // 1-based raw row of each kept row
  for (std::size_t r = 0; r < raw_rows.size(); ++r) {
    std::istringstream in(raw_rows[r]);
    std::string tok;
    std::vector<Token> row;
    while (in >> tok) {
      Token t;
      if (!parse_token(tok, t)) {
        throw_parse("non-numeric token '" + tok + "' at row " + std::to_string(r + 1));
      }
      row.push_back(t);
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
      origin.push_back(r + 1);
    }
  }
  if (rows.empty()) throw_parse("no numeric rows found");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw_parse("ragged row " + std::to_string(origin[r]) + ": expected " +
                  std::to_string(rows[0].size()) + " values, got " +
                  std::to_string(rows[r].size()));
    }
  }
  return rows;
}

}  // namespace

MatrixDescriptor detect_matrix(const std::vector<std::string>& raw_rows) {
  std::vector<std::vector<Token>> rows = tokenize(raw_rows);
  bool complex = false;
  for (const auto& row : rows) {
    for (const Token& t : row) complex = complex || t.complex;
  }
  MatrixDescriptor desc;
  desc.rows = rows.size();
  desc.cols = rows[0].size();
  desc.kind = MatrixKind::General;
  desc.scalar = complex ? ScalarKind::Complex64x2 : ScalarKind::Real64;
  return desc;
}

DetectedGrid parse_dense_text(const std::string& text) {
  std::vector<std::string> raw;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) raw.push_back(line);

  std::vector<std::vector<Token>> rows = tokenize(raw);
  bool complex = false;
  for (const auto& row : rows) {
    for (const Token& t : row) complex = complex || t.complex;
  }

  DetectedGrid out;
  out.desc.rows = rows.size();
  out.desc.cols = rows[0].size();
  out.desc.kind = MatrixKind::General;
  out.desc.scalar = complex ? ScalarKind::Complex64x2 : ScalarKind::Real64;
  if (complex) {
    DenseMatrix<Complex> d(out.desc.rows, out.desc.cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) d.at(i, j) = rows[i][j].value;
    }
    out.values = std::move(d);
  } else {
    DenseMatrix<double> d(out.desc.rows, out.desc.cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) d.at(i, j) = rows[i][j].value.real();
    }
    out.values = std::move(d);
  }
  return out;
}

}  // namespace g4s
