// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "g4s/detect.hpp"
#include "g4s/error.hpp"

using namespace g4s;

TEST_CASE("detect_matrix accepts uniform numeric grids") {
  MatrixDescriptor d = detect_matrix({"1 0", "0 2"});
  CHECK(d.rows == 2);
  CHECK(d.cols == 2);
  CHECK(d.kind == MatrixKind::General);
  CHECK(d.scalar == ScalarKind::Real64);
}

TEST_CASE("detect_matrix flags complex tokens") {
  CHECK(detect_matrix({"1 (0,1)", "2 3"}).scalar == ScalarKind::Complex64x2);
  CHECK(detect_matrix({"1 2+3i", "0 1"}).scalar == ScalarKind::Complex64x2);
  CHECK(detect_matrix({"1 -i", "0 2.5e-3i"}).scalar == ScalarKind::Complex64x2);
}

TEST_CASE("detect_matrix errors identify the row") {
  auto message_of = [](const std::vector<std::string>& rows) {
    try {
      detect_matrix(rows);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    FAIL("expected an error");
    return std::string();
  };
  CHECK(message_of({"1 0", "0 2 3"}).find("ragged row 2") != std::string::npos);
  CHECK(message_of({"1 a", "0 2"}).find("row 1") != std::string::npos);
  CHECK_THROWS_AS(detect_matrix({}), Error);
  CHECK_THROWS_AS(detect_matrix({"", "  "}), Error);
}

TEST_CASE("parse_dense_text recovers values") {
  SUBCASE("real grid") {
    DetectedGrid g = parse_dense_text("1 2\n3 4\n");
    auto& d = std::get<DenseMatrix<double>>(g.values);
    CHECK(d.at(0, 0) == 1.0);
    CHECK(d.at(1, 1) == 4.0);
  }
  SUBCASE("complex grid promotes all tokens") {
    DetectedGrid g = parse_dense_text("1 (2,-1)\n3i 4\n");
    auto& d = std::get<DenseMatrix<Complex>>(g.values);
    CHECK(d.at(0, 0) == Complex(1.0, 0.0));
    CHECK(d.at(0, 1) == Complex(2.0, -1.0));
    CHECK(d.at(1, 0) == Complex(0.0, 3.0));
  }
  SUBCASE("scientific notation inside complex") {
    DetectedGrid g = parse_dense_text("1e-2+2e+3i\n");
    auto& d = std::get<DenseMatrix<Complex>>(g.values);
    CHECK(d.at(0, 0) == Complex(0.01, 2000.0));
  }
}
