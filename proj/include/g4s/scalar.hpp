// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>

namespace g4s {

using Complex = std::complex<double>;

// Wire/storage tag for the two supported element types.
enum class ScalarKind : std::uint8_t { Real64 = 0, Complex64x2 = 1 };

template <typename T>
inline constexpr bool is_complex_v = std::is_same_v<T, Complex>;

template <typename T>
constexpr ScalarKind scalar_kind_of() {
  if constexpr (is_complex_v<T>) {
    return ScalarKind::Complex64x2;
  } else {
    static_assert(std::is_same_v<T, double>, "unsupported scalar type");
    return ScalarKind::Real64;
  }
}

inline double conj_value(double x) { return x; }
inline Complex conj_value(const Complex& x) { return std::conj(x); }

inline double abs_value(double x) { return std::fabs(x); }
inline double abs_value(const Complex& x) { return std::abs(x); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& x) {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}

}  // namespace g4s
