// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "g4s/matrix_market.hpp"
#include "g4s/synth.hpp"

using namespace g4s;

TEST_CASE("coordinate parsing basics") {
  SUBCASE("real general") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 5.0\n");
    auto& r = std::get<CooMatrix<double>>(m);
    CHECK(r.desc().kind == MatrixKind::General);
    REQUIRE(r.nnz() == 1);
    CHECK(r.entries()[0] == Entry<double>{0, 1, 5.0});
  }
  SUBCASE("pattern becomes weight one") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n3 1\n");
    auto& r = std::get<CooMatrix<double>>(m);
    REQUIRE(r.nnz() == 1);
    CHECK(r.entries()[0] == Entry<double>{2, 0, 1.0});
  }
  SUBCASE("symmetric keeps triangle, drops explicit zero") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 4.0\n1 1 0.0\n");
    auto& r = std::get<CooMatrix<double>>(m);
    CHECK(r.desc().kind == MatrixKind::Symmetric);
    REQUIRE(r.nnz() == 1);
    CHECK(r.entries()[0] == Entry<double>{1, 0, 4.0});
  }
  SUBCASE("integer widens") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 -3\n");
    CHECK(std::get<CooMatrix<double>>(m).entries()[0].value == -3.0);
  }
  SUBCASE("complex hermitian") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n2 1 1.0 2.0\n");
    auto& c = std::get<CooMatrix<Complex>>(m);
    CHECK(c.desc().kind == MatrixKind::Hermitian);
    CHECK(c.entries()[0] == Entry<Complex>{1, 0, Complex(1.0, 2.0)});
  }
  SUBCASE("comments and blank lines skipped") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix coordinate real general\n% a comment\n\n2 2 1\n% mid\n1 1 1.5\n");
    CHECK(std::get<CooMatrix<double>>(m).nnz() == 1);
  }
}

TEST_CASE("parse errors carry line numbers") {
  auto message_of = [](const std::string& text) {
    try {
      parse_matrix_market(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      return std::string(e.what());
    }
    FAIL("expected a parse error");
    return std::string();
  };

  CHECK(message_of("%%MatrixMarket matrix coordinate real bogus\n1 1 0\n")
            .find("line 1") != std::string::npos);
  CHECK(message_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n")
            .find("line 3") != std::string::npos);
  CHECK(message_of(
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 1 2.0\n")
            .find("duplicate") != std::string::npos);
  CHECK(message_of("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1.0 2.0\n")
            .find("complex value in a real file") != std::string::npos);
  CHECK(message_of("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 abc\n")
            .find("line 3") != std::string::npos);
  CHECK(message_of("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1.0\n")
            .find("row >= column") != std::string::npos);
  CHECK(message_of("%%MatrixMarket matrix coordinate complex hermitian\n1 1 1\n1 1 1.0 2.0\n")
            .find("imaginary") != std::string::npos);
}

TEST_CASE("array format") {
  SUBCASE("general column major") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix array real general\n2 2\n1.0\n3.0\n2.0\n4.0\n");
    auto& r = std::get<CooMatrix<double>>(m);
    REQUIRE(r.nnz() == 4);
    CHECK(r.entries()[0] == Entry<double>{0, 0, 1.0});
    CHECK(r.entries()[1] == Entry<double>{0, 1, 2.0});
    CHECK(r.entries()[2] == Entry<double>{1, 0, 3.0});
    CHECK(r.entries()[3] == Entry<double>{1, 1, 4.0});
  }
  SUBCASE("symmetric lower per column") {
    auto m = parse_matrix_market(
        "%%MatrixMarket matrix array real symmetric\n2 2\n1.0\n5.0\n2.0\n");
    auto& r = std::get<CooMatrix<double>>(m);
    CHECK(r.desc().kind == MatrixKind::Symmetric);
    REQUIRE(r.nnz() == 3);
    CHECK(r.entries()[1] == Entry<double>{1, 0, 5.0});
  }
  SUBCASE("wrong count is an error") {
    CHECK_THROWS_AS(parse_matrix_market(
                        "%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n"),
                    Error);
  }
}

TEST_CASE("writer round trips exactly") {
  SUBCASE("empty matrix") {
    MatrixDescriptor desc;
    desc.rows = desc.cols = 4;
    CooMatrix<double> m(desc, {});
    std::string text = write_matrix_market(m);
    CHECK(text.find("4 4 0") != std::string::npos);
    CHECK(std::get<CooMatrix<double>>(parse_matrix_market(text)) == m);
  }
  SUBCASE("awkward doubles survive") {
    MatrixDescriptor desc;
    desc.rows = desc.cols = 2;
    CooMatrix<double> m(desc, {{0, 0, 0.1}, {1, 0, 1.0 / 3.0}, {1, 1, 1e-300}});
    CHECK(std::get<CooMatrix<double>>(parse_matrix_market(write_matrix_market(m))) == m);
  }
  SUBCASE("hermitian entry") {
    MatrixDescriptor desc;
    desc.rows = desc.cols = 2;
    desc.kind = MatrixKind::Hermitian;
    desc.scalar = ScalarKind::Complex64x2;
    CooMatrix<Complex> m(desc, {{1, 0, Complex(1.0, 2.0)}});
    auto back = parse_matrix_market(write_matrix_market(m));
    CHECK(std::get<CooMatrix<Complex>>(back) == m);
  }
  SUBCASE("upper packed writes as lower symmetric") {
    MatrixDescriptor desc;
    desc.rows = desc.cols = 2;
    desc.kind = MatrixKind::PackedSymmetric;
    desc.uplo = Uplo::Upper;
    CooMatrix<double> m(desc, {{0, 1, 3.0}});
    auto back = std::get<CooMatrix<double>>(parse_matrix_market(write_matrix_market(m)));
    CHECK(back.desc().kind == MatrixKind::Symmetric);
    REQUIRE(back.nnz() == 1);
    CHECK(back.entries()[0] == Entry<double>{1, 0, 3.0});
    CHECK(expand_storage(back) == expand_storage(m));
  }
}

TEST_CASE("writer round trips random matrices of parse producible kinds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MatrixDescriptor desc;
    desc.rows = desc.cols = 1 + seed % 9;
    desc.kind = seed % 2 == 0 ? MatrixKind::General : MatrixKind::Symmetric;
    CooMatrix<double> m = random_matrix<double>(desc, 0.4, seed);
    auto back = std::get<CooMatrix<double>>(parse_matrix_market(write_matrix_market(m)));
    CHECK(back == m);
  }
}
