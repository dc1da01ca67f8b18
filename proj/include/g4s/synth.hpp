// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g4s/matrix.hpp"
#include "g4s/util.hpp"

namespace g4s {

// Deterministic synthetic inputs.  Identical seeds produce identical bits on
// every platform, so tests and benchmarks can name their fixtures by seed.

// A random matrix of the given kind and shape.  density is the fill fraction
// of the stored region; values are uniform in [-1, 1] (each component for
// complex).  Hermitian kinds get real diagonals; the skew kind gets none.
template <typename T>
CooMatrix<T> random_matrix(MatrixDescriptor desc, double density, std::uint64_t seed);

template <typename T>
std::vector<T> random_vector(std::uint64_t n, std::uint64_t seed);

template <typename T>
DenseMatrix<T> random_dense(std::uint64_t rows, std::uint64_t cols, std::uint64_t seed);

// Named generators for the worked examples: a stiffness style sparse matrix
// (symmetric pattern with a dominant diagonal), a dense interaction chain
// factor scaled to keep chain products tame, and a row normalized coupling
// matrix whose rows sum to one.
CooMatrix<double> synth_stiffness(std::uint64_t n, std::uint64_t seed);
CooMatrix<double> synth_chain_factor(std::uint64_t n, std::uint64_t seed);
CooMatrix<double> synth_coupling(std::uint64_t n, std::uint64_t seed);

// Generator registry used by the command line `gen` subcommand.
std::vector<std::string> synth_names();
CooMatrix<double> synth_by_name(const std::string& name, std::uint64_t n, std::uint64_t seed);

}  // namespace g4s
