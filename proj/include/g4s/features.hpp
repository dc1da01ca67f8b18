// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>

#include "g4s/error.hpp"
#include "g4s/matrix.hpp"

namespace g4s {

enum class OpKind : std::uint8_t { MV = 0, Add = 1, MM = 2, Rank1 = 3, Compose = 4 };

inline const char* op_kind_name(OpKind op) {
  switch (op) {
    case OpKind::MV: return "mv";
    case OpKind::Add: return "add";
    case OpKind::MM: return "mm";
    case OpKind::Rank1: return "rank1";
    case OpKind::Compose: return "compose";
  }
  return "unknown";
}

inline OpKind op_kind_from_name(const std::string& name) {
  for (OpKind op : {OpKind::MV, OpKind::Add, OpKind::MM, OpKind::Rank1, OpKind::Compose}) {
    if (name == op_kind_name(op)) return op;
  }
  throw_validation("unknown operation '" + name + "'");
}

// What the strategy selector sees about a pending operation.  Density is
// measured on the expanded matrix, i.e. edge count over the full shape.
struct FeatureVector {
  OpKind op = OpKind::MV;
  double density = 0.0;
  bool symmetric = false;
  bool triangular = false;
  bool banded = false;
  bool packed = false;
  bool hermitian = false;
  std::uint64_t size_log2 = 0;
  std::string platform = "cpu";

  static constexpr std::size_t kCount = 8;  // numeric features used for splits

  std::array<double, kCount> numeric() const {
    return {static_cast<double>(op), density,
            symmetric ? 1.0 : 0.0,   triangular ? 1.0 : 0.0,
            banded ? 1.0 : 0.0,      packed ? 1.0 : 0.0,
            hermitian ? 1.0 : 0.0,   static_cast<double>(size_log2)};
  }

  bool operator==(const FeatureVector&) const = default;
};

inline const std::array<const char*, FeatureVector::kCount>& feature_names() {
  static const std::array<const char*, FeatureVector::kCount> names = {
      "op",     "density", "symmetric", "triangular",
      "banded", "packed",  "hermitian", "size_log2"};
  return names;
}

inline FeatureVector extract_features(OpKind op, const MatrixDescriptor& desc,
                                      std::uint64_t nnz,
                                      const std::string& platform = "cpu") {
  std::uint64_t cells = desc.rows * desc.cols;
  if (nnz > cells) {
    throw_validation("nonzero count " + std::to_string(nnz) +
                     " exceeds the matrix capacity " + std::to_string(cells));
  }
  FeatureVector f;
  f.op = op;
  f.density = cells == 0 ? 0.0 : static_cast<double>(nnz) / static_cast<double>(cells);
  switch (desc.kind) {
    case MatrixKind::General:
      break;
    case MatrixKind::Symmetric:
    case MatrixKind::SkewSymmetric:
      f.symmetric = true;
      break;
    case MatrixKind::TriangularUpper:
    case MatrixKind::TriangularLower:
      f.triangular = true;
      break;
    case MatrixKind::Banded:
      f.banded = true;
      break;
    case MatrixKind::PackedSymmetric:
      f.symmetric = true;
      f.packed = true;
      break;
    case MatrixKind::PackedTriangular:
      f.triangular = true;
      f.packed = true;
      break;
    case MatrixKind::Hermitian:
      f.hermitian = true;
      break;
    case MatrixKind::HermitianBanded:
      f.hermitian = true;
      f.banded = true;
      break;
    case MatrixKind::HermitianPacked:
      f.hermitian = true;
      f.packed = true;
      break;
  }
  std::uint64_t extent = std::max(desc.rows, desc.cols);
  f.size_log2 = extent == 0 ? 0 : std::bit_width(extent) - 1;
  f.platform = platform;
  return f;
}

}  // namespace g4s
