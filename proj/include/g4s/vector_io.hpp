// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "g4s/scalar.hpp"

namespace g4s {

using ParsedVector = std::variant<std::vector<double>, std::vector<Complex>>;

// Reads a vector from either a Matrix Market array file (single column or
// single row) or plain text with one value per line; complex plain text puts
// the real and imaginary parts on one line separated by whitespace.  Blank
// lines and % comments are skipped.
ParsedVector parse_vector_text(const std::string& text);
ParsedVector read_vector_file(const std::string& path);

// Plain text, one value per line, shortest digits that round trip exactly.
std::string format_vector(const std::vector<double>& v);
std::string format_vector(const std::vector<Complex>& v);
std::string format_vector(const ParsedVector& v);
void write_vector_file(const std::string& path, const ParsedVector& v);

// Shortest decimal form that parses back to the same double.
std::string format_scalar(double v);
std::string format_scalar(const Complex& v);

}  // namespace g4s
