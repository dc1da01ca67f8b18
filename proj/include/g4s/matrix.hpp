// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "g4s/error.hpp"
#include "g4s/scalar.hpp"

namespace g4s {

// Storage layouts understood by the framework.  Compact kinds keep only the
// entries of their stored region; expand_storage rewrites any of them as an
// explicit General matrix.
enum class MatrixKind : std::uint8_t {
  General,
  Symmetric,
  SkewSymmetric,
  Hermitian,
  TriangularUpper,
  TriangularLower,
  Banded,
  PackedSymmetric,
  PackedTriangular,
  HermitianBanded,
  HermitianPacked,
};

enum class Uplo : std::uint8_t { Upper, Lower };

const char* matrix_kind_name(MatrixKind kind);
const char* uplo_name(Uplo uplo);

struct MatrixDescriptor {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  MatrixKind kind = MatrixKind::General;
  ScalarKind scalar = ScalarKind::Real64;
  // Band widths for Banded (kl below, ku above); HermitianBanded uses
  // band_lower for its single half bandwidth.
  std::uint64_t band_lower = 0;
  std::uint64_t band_upper = 0;
  // Stored triangle for the packed kinds.  The unpacked symmetry kinds
  // (Symmetric, SkewSymmetric, Hermitian, HermitianBanded) always store the
  // lower triangle.
  Uplo uplo = Uplo::Lower;

  bool square() const { return rows == cols; }
  bool operator==(const MatrixDescriptor&) const = default;
};

// Throws Validation when the descriptor is inconsistent: zero dimensions,
// a symmetry or band kind on a non square shape, band widths outside the
// shape, or a Hermitian kind without complex scalars.
void validate_descriptor(const MatrixDescriptor& desc);

// True when the kind constrains entries to a stored region smaller than the
// full rectangle.
bool kind_is_compact(MatrixKind kind);
bool kind_is_hermitian(MatrixKind kind);

// True when (row, col) lies in the stored region for the descriptor.
bool in_stored_region(const MatrixDescriptor& desc, std::uint64_t row, std::uint64_t col);

template <typename T>
struct Entry {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  T value{};

  bool operator==(const Entry&) const = default;
};

template <typename T>
bool entry_position_less(const Entry<T>& a, const Entry<T>& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

// Sparse matrix in coordinate form.  Entries are kept canonical: sorted by
// (row, col), unique, with exact zeros dropped at construction.  Entries of a
// compact kind must lie inside the stored region.
template <typename T>
class CooMatrix {
public:
  CooMatrix() = default;

  CooMatrix(MatrixDescriptor desc, std::vector<Entry<T>> entries)
      : desc_(desc), entries_(std::move(entries)) {
    if (desc_.scalar != scalar_kind_of<T>()) {
      throw_validation("matrix scalar kind does not match element type");
    }
    validate_descriptor(desc_);
    canonicalize();
  }

  const MatrixDescriptor& desc() const { return desc_; }
  std::uint64_t rows() const { return desc_.rows; }
  std::uint64_t cols() const { return desc_.cols; }
  const std::vector<Entry<T>>& entries() const { return entries_; }
  std::uint64_t nnz() const { return entries_.size(); }

  bool operator==(const CooMatrix&) const = default;

private:
  void canonicalize();

  MatrixDescriptor desc_;
  std::vector<Entry<T>> entries_;
};

template <typename T>
struct DenseMatrix {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<T> values;  // row major

  DenseMatrix() = default;
  DenseMatrix(std::uint64_t r, std::uint64_t c) : rows(r), cols(c), values(r * c, T{}) {}
  DenseMatrix(std::uint64_t r, std::uint64_t c, std::vector<T> v)
      : rows(r), cols(c), values(std::move(v)) {}

  T& at(std::uint64_t i, std::uint64_t j) { return values[i * cols + j]; }
  const T& at(std::uint64_t i, std::uint64_t j) const { return values[i * cols + j]; }

  bool operator==(const DenseMatrix&) const = default;
};

namespace detail {

template <typename T>
void append_mirror(MatrixKind kind, const std::vector<Entry<T>>& stored,
                   std::vector<Entry<T>>& out) {
  for (const Entry<T>& e : stored) {
    out.push_back(e);
    if (e.row == e.col) continue;
    switch (kind) {
      case MatrixKind::Symmetric:
      case MatrixKind::PackedSymmetric:
        out.push_back({e.col, e.row, e.value});
        break;
      case MatrixKind::SkewSymmetric:
        out.push_back({e.col, e.row, -e.value});
        break;
      case MatrixKind::Hermitian:
      case MatrixKind::HermitianBanded:
      case MatrixKind::HermitianPacked:
        out.push_back({e.col, e.row, conj_value(e.value)});
        break;
      default:
        break;
    }
  }
}

}  // namespace detail

// Rewrites any storage kind as an explicit General matrix over the same
// scalar type.  Symmetry kinds mirror their stored triangle (negated for the
// skew kind, conjugated for the Hermitian kinds); triangular, banded and
// packed kinds reinterpret their stored entries unchanged.
template <typename T>
CooMatrix<T> expand_storage(const CooMatrix<T>& m) {
  MatrixDescriptor desc = m.desc();
  if (desc.kind == MatrixKind::General) return m;

  std::vector<Entry<T>> out;
  out.reserve(m.nnz() * 2);
  switch (desc.kind) {
    case MatrixKind::Symmetric:
    case MatrixKind::SkewSymmetric:
    case MatrixKind::Hermitian:
    case MatrixKind::PackedSymmetric:
    case MatrixKind::HermitianBanded:
    case MatrixKind::HermitianPacked:
      detail::append_mirror(desc.kind, m.entries(), out);
      break;
    case MatrixKind::TriangularUpper:
    case MatrixKind::TriangularLower:
    case MatrixKind::Banded:
    case MatrixKind::PackedTriangular:
      out = m.entries();
      break;
    case MatrixKind::General:
      break;
  }

  MatrixDescriptor general;
  general.rows = desc.rows;
  general.cols = desc.cols;
  general.kind = MatrixKind::General;
  general.scalar = desc.scalar;
  return CooMatrix<T>(general, std::move(out));
}

template <typename T>
DenseMatrix<T> to_dense(const CooMatrix<T>& m) {
  CooMatrix<T> g = expand_storage(m);
  DenseMatrix<T> d(g.rows(), g.cols());
  for (const Entry<T>& e : g.entries()) d.at(e.row, e.col) = e.value;
  return d;
}

// Canonical sparse form of a dense matrix: General kind, zeros dropped.
template <typename T>
CooMatrix<T> from_dense(const DenseMatrix<T>& d) {
  std::vector<Entry<T>> entries;
  for (std::uint64_t i = 0; i < d.rows; ++i) {
    for (std::uint64_t j = 0; j < d.cols; ++j) {
      const T& v = d.at(i, j);
      if (!is_zero(v)) entries.push_back({i, j, v});
    }
  }
  MatrixDescriptor desc;
  desc.rows = d.rows;
  desc.cols = d.cols;
  desc.scalar = scalar_kind_of<T>();
  return CooMatrix<T>(desc, std::move(entries));
}

template <typename T>
void CooMatrix<T>::canonicalize() {
  std::erase_if(entries_, [](const Entry<T>& e) { return is_zero(e.value); });
  std::sort(entries_.begin(), entries_.end(), entry_position_less<T>);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Entry<T>& e = entries_[k];
    if (e.row >= desc_.rows || e.col >= desc_.cols) {
      throw_validation("entry (" + std::to_string(e.row + 1) + ", " +
                       std::to_string(e.col + 1) + ") outside a " +
                       std::to_string(desc_.rows) + " x " + std::to_string(desc_.cols) +
                       " matrix");
    }
    if (k > 0 && entries_[k - 1].row == e.row && entries_[k - 1].col == e.col) {
      throw_validation("duplicate entry at (" + std::to_string(e.row + 1) + ", " +
                       std::to_string(e.col + 1) + ")");
    }
    if (!in_stored_region(desc_, e.row, e.col)) {
      throw_validation("stored entry (" + std::to_string(e.row + 1) + ", " +
                       std::to_string(e.col + 1) + ") outside the declared " +
                       std::string(matrix_kind_name(desc_.kind)) + " region");
    }
    if constexpr (is_complex_v<T>) {
      if (kind_is_hermitian(desc_.kind) && e.row == e.col && e.value.imag() != 0.0) {
        throw_validation("Hermitian diagonal entry at (" + std::to_string(e.row + 1) +
                         ", " + std::to_string(e.col + 1) +
                         ") has a nonzero imaginary part");
      }
    }
    if (!is_finite(e.value)) {
      throw_validation("non finite value at (" + std::to_string(e.row + 1) + ", " +
                       std::to_string(e.col + 1) + ")");
    }
  }
}

}  // namespace g4s
