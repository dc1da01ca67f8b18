// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "g4s/matrix.hpp"

namespace g4s {

// A parsed matrix is real or complex depending on the file's field.
using ParsedMatrix = std::variant<CooMatrix<double>, CooMatrix<Complex>>;

// Reads Matrix Market text: coordinate and array formats, real, integer,
// complex and pattern fields, general, symmetric, skew-symmetric and
// hermitian symmetries, 1-based indices, % comments.  Integer and pattern
// fields widen to real (pattern entries become 1.0).  Parse errors carry the
// offending 1-based line number.
ParsedMatrix parse_matrix_market(const std::string& text);
ParsedMatrix read_matrix_market(std::istream& in);
ParsedMatrix read_matrix_market_file(const std::string& path);

// Writes coordinate format with 17 significant digits, enough to reproduce
// every double exactly.  The storage kind picks the symmetry header:
// symmetric kinds write "symmetric", the skew kind "skew-symmetric",
// Hermitian kinds "hermitian", everything else "general".  Stored triangles
// are emitted as the lower triangle regardless of how they were packed.
std::string write_matrix_market(const CooMatrix<double>& m);
std::string write_matrix_market(const CooMatrix<Complex>& m);
std::string write_matrix_market(const ParsedMatrix& m);
void write_matrix_market_file(const std::string& path, const ParsedMatrix& m);

ScalarKind parsed_scalar_kind(const ParsedMatrix& m);
const MatrixDescriptor& parsed_descriptor(const ParsedMatrix& m);

}  // namespace g4s
