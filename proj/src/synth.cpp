// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/synth.hpp"

#include <algorithm>

#include "g4s/error.hpp"

namespace g4s {

template <typename T>
CooMatrix<T> random_matrix(MatrixDescriptor desc, double density, std::uint64_t seed) {
  desc.scalar = scalar_kind_of<T>();
  validate_descriptor(desc);
  if (density < 0.0 || density > 1.0) {
    throw_validation("density must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Entry<T>> entries;
  for (std::uint64_t i = 0; i < desc.rows; ++i) {
    for (std::uint64_t j = 0; j < desc.cols; ++j) {
      if (!in_stored_region(desc, i, j)) continue;
      if (density < 1.0 && rng.next_unit() >= density) continue;
      T v;
      if (kind_is_hermitian(desc.kind) && i == j) {
        v = T{} + rng.next_real(-1.0, 1.0);
      } else {
        v = rng.next_scalar<T>(-1.0, 1.0);
      }
      if (!is_zero(v)) entries.push_back({i, j, v});
    }
  }
  return CooMatrix<T>(desc, std::move(entries));
}

template CooMatrix<double> random_matrix<double>(MatrixDescriptor, double, std::uint64_t);
template CooMatrix<Complex> random_matrix<Complex>(MatrixDescriptor, double, std::uint64_t);

template <typename T>
std::vector<T> random_vector(std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<T> v(n);
  for (auto& x : v) x = rng.next_scalar<T>(-1.0, 1.0);
  return v;
}

template std::vector<double> random_vector<double>(std::uint64_t, std::uint64_t);
template std::vector<Complex> random_vector<Complex>(std::uint64_t, std::uint64_t);

template <typename T>
DenseMatrix<T> random_dense(std::uint64_t rows, std::uint64_t cols, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix<T> d(rows, cols);
  for (auto& x : d.values) x = rng.next_scalar<T>(-1.0, 1.0);
  return d;
}

template DenseMatrix<double> random_dense<double>(std::uint64_t, std::uint64_t, std::uint64_t);
template DenseMatrix<Complex> random_dense<Complex>(std::uint64_t, std::uint64_t, std::uint64_t);

CooMatrix<double> synth_stiffness(std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  double density = n <= 4 ? 1.0 : 4.0 / static_cast<double>(n);
  std::vector<Entry<double>> off;
  std::vector<double> row_abs(n, 0.0);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < i; ++j) {
      if (density < 1.0 && rng.next_unit() >= density) continue;
      double v = rng.next_real(-1.0, 1.0);
      if (v == 0.0) continue;
      off.push_back({i, j, v});
      row_abs[i] += std::fabs(v);
      row_abs[j] += std::fabs(v);
    }
  }
  std::vector<Entry<double>> entries = std::move(off);
  for (std::uint64_t i = 0; i < n; ++i) {
    entries.push_back({i, i, 1.0 + row_abs[i]});
  }
  MatrixDescriptor desc;
  desc.rows = desc.cols = n;
  desc.kind = MatrixKind::Symmetric;
  return CooMatrix<double>(desc, std::move(entries));
}

CooMatrix<double> synth_chain_factor(std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  double scale = 1.0 / static_cast<double>(n);
  std::vector<Entry<double>> entries;
  entries.reserve(n * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      double v = rng.next_real(-1.0, 1.0) * scale;
      if (v != 0.0) entries.push_back({i, j, v});
    }
  }
  MatrixDescriptor desc;
  desc.rows = desc.cols = n;
  return CooMatrix<double>(desc, std::move(entries));
}

CooMatrix<double> synth_coupling(std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  double density = n <= 4 ? 1.0 : 4.0 / static_cast<double>(n);
  std::vector<std::vector<std::pair<std::uint64_t, double>>> rows(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    rows[i].emplace_back(i, rng.next_real(0.1, 1.0));
    for (std::uint64_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (density < 1.0 && rng.next_unit() >= density) continue;
      rows[i].emplace_back(j, rng.next_real(0.1, 1.0));
    }
  }
  std::vector<Entry<double>> entries;
  for (std::uint64_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (auto& [j, v] : rows[i]) sum += v;
    for (auto& [j, v] : rows[i]) entries.push_back({i, j, v / sum});
  }
  MatrixDescriptor desc;
  desc.rows = desc.cols = n;
  return CooMatrix<double>(desc, std::move(entries));
}

std::vector<std::string> synth_names() { return {"stiffness", "chain", "coupling"}; }

CooMatrix<double> synth_by_name(const std::string& name, std::uint64_t n,
                                std::uint64_t seed) {
  if (name == "stiffness") return synth_stiffness(n, seed);
  if (name == "chain") return synth_chain_factor(n, seed);
  if (name == "coupling") return synth_coupling(n, seed);
  throw_validation("unknown generator '" + name + "', expected stiffness, chain or coupling");
}

}  // namespace g4s
