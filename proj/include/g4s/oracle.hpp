// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "g4s/error.hpp"
#include "g4s/matrix.hpp"

namespace g4s {

// Textbook dense reference implementations.  Every graph based operation is
// checked against these; they densify first and sum strictly left to right so
// a given input always produces the same bits.

template <typename T>
std::vector<T> oracle_mv(const CooMatrix<T>& m, const std::vector<T>& v) {
  if (v.size() != m.cols()) {
    throw_validation("vector length " + std::to_string(v.size()) +
                     " does not match matrix columns " + std::to_string(m.cols()));
  }
  DenseMatrix<T> d = to_dense(m);
  std::vector<T> y(d.rows, T{});
  for (std::uint64_t i = 0; i < d.rows; ++i) {
    T s{};
    for (std::uint64_t j = 0; j < d.cols; ++j) s += d.at(i, j) * v[j];
    y[i] = s;
  }
  return y;
}

template <typename T>
DenseMatrix<T> oracle_add(const CooMatrix<T>& a, const CooMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw_validation("addition operands must share a shape");
  }
  DenseMatrix<T> da = to_dense(a);
  DenseMatrix<T> db = to_dense(b);
  for (std::size_t k = 0; k < da.values.size(); ++k) da.values[k] += db.values[k];
  return da;
}

template <typename T>
DenseMatrix<T> oracle_mm(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols != b.rows) {
    throw_validation("product inner dimensions do not match");
  }
  DenseMatrix<T> c(a.rows, b.cols);
  for (std::uint64_t i = 0; i < a.rows; ++i) {
    for (std::uint64_t k = 0; k < b.cols; ++k) {
      T s{};
      for (std::uint64_t j = 0; j < a.cols; ++j) s += a.at(i, j) * b.at(j, k);
      c.at(i, k) = s;
    }
  }
  return c;
}

template <typename T>
DenseMatrix<T> oracle_mm(const CooMatrix<T>& a, const CooMatrix<T>& b) {
  return oracle_mm(to_dense(a), to_dense(b));
}

// A + u * transpose(w), with w conjugated in Hermitian mode.
template <typename T>
DenseMatrix<T> oracle_rank1(const CooMatrix<T>& a, const std::vector<T>& u,
                            const std::vector<T>& w, bool conjugate) {
  if (u.size() != a.rows() || w.size() != a.cols()) {
    throw_validation("rank-1 update vectors do not match the matrix shape");
  }
  DenseMatrix<T> d = to_dense(a);
  for (std::uint64_t i = 0; i < d.rows; ++i) {
    for (std::uint64_t j = 0; j < d.cols; ++j) {
      T wj = conjugate ? conj_value(w[j]) : w[j];
      d.at(i, j) += u[i] * wj;
    }
  }
  return d;
}

// Relative error helpers.  The denominator is max(1, inf norm of the oracle
// value), so near zero oracles degrade to absolute error.

template <typename T>
double inf_norm(const std::vector<T>& v) {
  double n = 0.0;
  for (const T& x : v) n = std::max(n, abs_value(x));
  return n;
}

template <typename T>
double max_rel_error(const std::vector<T>& actual, const std::vector<T>& oracle) {
  if (actual.size() != oracle.size()) {
    throw_validation("comparison lengths differ");
  }
  double denom = std::max(1.0, inf_norm(oracle));
  double worst = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    worst = std::max(worst, abs_value(actual[i] - oracle[i]) / denom);
  }
  return worst;
}

template <typename T>
double max_rel_error(const DenseMatrix<T>& actual, const DenseMatrix<T>& oracle) {
  if (actual.rows != oracle.rows || actual.cols != oracle.cols) {
    throw_validation("comparison shapes differ");
  }
  return max_rel_error(actual.values, oracle.values);
}

template <typename T>
constexpr double comparison_tolerance() {
  return is_complex_v<T> ? 1e-9 : 1e-10;
}

}  // namespace g4s
