// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/matrix.hpp"

namespace g4s {

const char* matrix_kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::General: return "general";
    case MatrixKind::Symmetric: return "symmetric";
    case MatrixKind::SkewSymmetric: return "skew-symmetric";
    case MatrixKind::Hermitian: return "hermitian";
    case MatrixKind::TriangularUpper: return "triangular-upper";
    case MatrixKind::TriangularLower: return "triangular-lower";
    case MatrixKind::Banded: return "banded";
    case MatrixKind::PackedSymmetric: return "packed-symmetric";
    case MatrixKind::PackedTriangular: return "packed-triangular";
    case MatrixKind::HermitianBanded: return "hermitian-banded";
    case MatrixKind::HermitianPacked: return "hermitian-packed";
  }
  return "unknown";
}

const char* uplo_name(Uplo uplo) {
  return uplo == Uplo::Upper ? "upper" : "lower";
}

bool kind_is_compact(MatrixKind kind) {
  return kind != MatrixKind::General;
}

bool kind_is_hermitian(MatrixKind kind) {
  return kind == MatrixKind::Hermitian || kind == MatrixKind::HermitianBanded ||
         kind == MatrixKind::HermitianPacked;
}

static bool kind_requires_square(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::General:
    case MatrixKind::Banded:
      return false;
    default:
      return true;
  }
}

void validate_descriptor(const MatrixDescriptor& desc) {
  if (desc.rows == 0 || desc.cols == 0) {
    throw_validation("matrix dimensions must be at least 1 x 1");
  }
  if (kind_requires_square(desc.kind) && !desc.square()) {
    throw_validation(std::string(matrix_kind_name(desc.kind)) +
                     " storage requires a square matrix, got " +
                     std::to_string(desc.rows) + " x " + std::to_string(desc.cols));
  }
  if (kind_is_hermitian(desc.kind) && desc.scalar != ScalarKind::Complex64x2) {
    throw_validation(std::string(matrix_kind_name(desc.kind)) +
                     " storage requires complex scalars");
  }
  if (desc.kind == MatrixKind::Banded) {
    if (desc.band_lower >= desc.rows || desc.band_upper >= desc.cols) {
      throw_validation("band widths (" + std::to_string(desc.band_lower) + ", " +
                       std::to_string(desc.band_upper) + ") exceed the matrix shape");
    }
  }
  if (desc.kind == MatrixKind::HermitianBanded) {
    if (desc.band_lower >= desc.rows) {
      throw_validation("half bandwidth " + std::to_string(desc.band_lower) +
                       " exceeds the matrix order");
    }
  }
}

bool in_stored_region(const MatrixDescriptor& desc, std::uint64_t row, std::uint64_t col) {
  switch (desc.kind) {
    case MatrixKind::General:
      return true;
    case MatrixKind::Symmetric:
    case MatrixKind::Hermitian:
      return row >= col;
    case MatrixKind::SkewSymmetric:
      return row > col;
    case MatrixKind::TriangularUpper:
      return col >= row;
    case MatrixKind::TriangularLower:
      return row >= col;
    case MatrixKind::Banded:
      return (row >= col ? row - col <= desc.band_lower
                         : col - row <= desc.band_upper);
    case MatrixKind::PackedSymmetric:
    case MatrixKind::PackedTriangular:
    case MatrixKind::HermitianPacked:
      return desc.uplo == Uplo::Upper ? col >= row : row >= col;
    case MatrixKind::HermitianBanded:
      return row >= col && row - col <= desc.band_lower;
  }
  return false;
}

}  // namespace g4s
