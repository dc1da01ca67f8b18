// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "g4s/matrix.hpp"

namespace g4s {

// Recognizes a plain numeric grid: whitespace separated rows of equal length
// whose tokens are integers, reals, or complex values written as "(a,b)" or
// "a+bi".  Returns the implied descriptor (General, rows x cols, complex if
// any token is).  Errors name the offending 1-based row.
MatrixDescriptor detect_matrix(const std::vector<std::string>& raw_rows);

using DetectedValues = std::variant<DenseMatrix<double>, DenseMatrix<Complex>>;

struct DetectedGrid {
  MatrixDescriptor desc;
  DetectedValues values;
};

// Full parse of the same grid format, for inputs that are not Matrix Market.
DetectedGrid parse_dense_text(const std::string& text);

}  // namespace g4s
