// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
//
// Plain compressed-sparse-row product, the straight-line reference that the
// graph engine's single-threaded pass is measured against.
#pragma once

#include <cstdint>
#include <vector>

#include "g4s/error.hpp"
#include "g4s/matrix.hpp"

namespace g4s {

template <typename T>
struct CsrMatrix {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::uint64_t> offsets;  // rows + 1
  std::vector<std::uint64_t> col_index;
  std::vector<T> values;
};

template <typename T>
CsrMatrix<T> csr_from_coo(const CooMatrix<T>& m) {
  CooMatrix<T> g = expand_storage(m);
  CsrMatrix<T> csr;
  csr.rows = g.rows();
  csr.cols = g.cols();
  csr.offsets.assign(csr.rows + 1, 0);
  for (const Entry<T>& e : g.entries()) ++csr.offsets[e.row + 1];
  for (std::uint64_t i = 0; i < csr.rows; ++i) csr.offsets[i + 1] += csr.offsets[i];
  csr.col_index.resize(g.nnz());
  csr.values.resize(g.nnz());
  std::vector<std::uint64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const Entry<T>& e : g.entries()) {
    std::uint64_t at = cursor[e.row]++;
    csr.col_index[at] = e.col;
    csr.values[at] = e.value;
  }
  return csr;
}

template <typename T>
std::vector<T> csr_spmv(const CsrMatrix<T>& m, const std::vector<T>& x) {
  if (x.size() != m.cols) throw_validation("baseline operand length mismatch");
  std::vector<T> y(m.rows, T{});
  for (std::uint64_t i = 0; i < m.rows; ++i) {
    T acc{};
    for (std::uint64_t k = m.offsets[i]; k < m.offsets[i + 1]; ++k) {
      acc += m.values[k] * x[m.col_index[k]];
    }
    y[i] = acc;
  }
  return y;
}

}  // namespace g4s
