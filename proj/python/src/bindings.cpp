// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
//
// Python module.  Matrices cross the boundary as coordinate triplets plus a
// shape; vectors and dense blocks as contiguous numpy arrays.  The g4s
// package wraps these typed entry points behind a numpy/scipy-friendly API.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>

#include <cstdint>
#include <string>
#include <vector>

#include "g4s/engine.hpp"
#include "g4s/graph.hpp"
#include "g4s/runner.hpp"

namespace py = pybind11;

namespace {

template <typename T>
using IdArray = py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>;

template <typename T>
using ValArray = py::array_t<T, py::array::c_style | py::array::forcecast>;

template <typename T>
std::vector<T> to_vector(const ValArray<T>& a) {
  if (a.ndim() != 1) g4s::throw_validation("expected a one dimensional array");
  auto r = a.template unchecked<1>();
  std::vector<T> out(static_cast<std::size_t>(r.shape(0)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) out[i] = r(i);
  return out;
}

template <typename T>
py::array_t<T> from_vector(const std::vector<T>& v) {
  // The single integer array_t constructor in pybind11 3.0 leaves the stride
  // container empty, yielding a zero stride array; pass an explicit shape.
  py::array_t<T> out({static_cast<py::ssize_t>(v.size())});
  auto w = out.template mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<py::ssize_t>(i)) = v[i];
  return out;
}

template <typename T>
g4s::CooMatrix<T> coo_from_triplets(std::uint64_t rows, std::uint64_t cols,
                                    const IdArray<T>& ri, const IdArray<T>& ci,
                                    const ValArray<T>& vals) {
  if (ri.ndim() != 1 || ci.ndim() != 1 || vals.ndim() != 1 ||
      ri.shape(0) != ci.shape(0) || ri.shape(0) != vals.shape(0)) {
    g4s::throw_validation("row, column and value arrays must share one length");
  }
  auto r = ri.template unchecked<1>();
  auto c = ci.template unchecked<1>();
  auto v = vals.template unchecked<1>();
  std::vector<g4s::Entry<T>> entries;
  entries.reserve(static_cast<std::size_t>(r.shape(0)));
  for (py::ssize_t k = 0; k < r.shape(0); ++k) {
    entries.push_back({r(k), c(k), v(k)});
  }
  g4s::MatrixDescriptor desc;
  desc.rows = rows;
  desc.cols = cols;
  desc.scalar = g4s::scalar_kind_of<T>();
  return g4s::CooMatrix<T>(desc, std::move(entries));
}

template <typename T>
py::tuple triplets_of(const g4s::CooMatrix<T>& m) {
  const auto& entries = m.entries();
  auto count = static_cast<py::ssize_t>(entries.size());
  py::array_t<std::uint64_t> ri({count});
  py::array_t<std::uint64_t> ci({count});
  py::array_t<T> vals({count});
  auto wr = ri.mutable_unchecked<1>();
  auto wc = ci.mutable_unchecked<1>();
  auto wv = vals.template mutable_unchecked<1>();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto i = static_cast<py::ssize_t>(k);
    wr(i) = entries[k].row;
    wc(i) = entries[k].col;
    wv(i) = entries[k].value;
  }
  return py::make_tuple(m.rows(), m.cols(), ri, ci, vals);
}

template <typename T>
g4s::DenseMatrix<T> dense_from_array(const ValArray<T>& a) {
  if (a.ndim() != 2) g4s::throw_validation("expected a two dimensional array");
  auto r = a.template unchecked<2>();
  g4s::DenseMatrix<T> out(static_cast<std::uint64_t>(r.shape(0)),
                          static_cast<std::uint64_t>(r.shape(1)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) {
    for (py::ssize_t j = 0; j < r.shape(1); ++j) {
      out.at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)) = r(i, j);
    }
  }
  return out;
}

template <typename T>
py::array_t<T> array_of_dense(const g4s::DenseMatrix<T>& d) {
  py::array_t<T> out({static_cast<py::ssize_t>(d.rows),
                      static_cast<py::ssize_t>(d.cols)});
  auto w = out.template mutable_unchecked<2>();
  for (std::uint64_t i = 0; i < d.rows; ++i) {
    for (std::uint64_t j = 0; j < d.cols; ++j) {
      w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = d.at(i, j);
    }
  }
  return out;
}

template <typename T>
void bind_typed(py::module_& m, const char* suffix) {
  m.def((std::string("mv_") + suffix).c_str(),
        [](std::uint64_t rows, std::uint64_t cols, IdArray<T> ri, IdArray<T> ci,
           ValArray<T> vals, ValArray<T> x, int workers) {
          auto a = coo_from_triplets<T>(rows, cols, ri, ci, vals);
          return from_vector(
              g4s::graph_mv(g4s::matrix_to_graph(a), to_vector(x), {}, workers));
        },
        py::arg("rows"), py::arg("cols"), py::arg("row_idx"), py::arg("col_idx"),
        py::arg("values"), py::arg("x"), py::arg("workers") = 0);

  m.def((std::string("add_") + suffix).c_str(),
        [](std::uint64_t rows, std::uint64_t cols, IdArray<T> ari, IdArray<T> aci,
           ValArray<T> avals, IdArray<T> bri, IdArray<T> bci, ValArray<T> bvals) {
          auto a = coo_from_triplets<T>(rows, cols, ari, aci, avals);
          auto b = coo_from_triplets<T>(rows, cols, bri, bci, bvals);
          auto sum = g4s::graph_add(g4s::matrix_to_graph(a), g4s::matrix_to_graph(b));
          return triplets_of(g4s::graph_to_matrix(sum));
        });

  m.def((std::string("mm_") + suffix).c_str(),
        [](std::uint64_t rows, std::uint64_t cols, IdArray<T> ri, IdArray<T> ci,
           ValArray<T> vals, ValArray<T> b, int workers) {
          auto a = coo_from_triplets<T>(rows, cols, ri, ci, vals);
          return array_of_dense(g4s::graph_mm(g4s::matrix_to_graph(a),
                                              dense_from_array<T>(b), {}, workers));
        },
        py::arg("rows"), py::arg("cols"), py::arg("row_idx"), py::arg("col_idx"),
        py::arg("values"), py::arg("b"), py::arg("workers") = 0);

  m.def((std::string("compose_") + suffix).c_str(),
        [](std::uint64_t a_rows, std::uint64_t a_cols, IdArray<T> ari,
           IdArray<T> aci, ValArray<T> avals, std::uint64_t b_rows,
           std::uint64_t b_cols, IdArray<T> bri, IdArray<T> bci, ValArray<T> bvals,
           int workers) {
          auto a = coo_from_triplets<T>(a_rows, a_cols, ari, aci, avals);
          auto b = coo_from_triplets<T>(b_rows, b_cols, bri, bci, bvals);
          auto prod = g4s::compose_graphs(g4s::matrix_to_graph(a),
                                          g4s::matrix_to_graph(b), workers);
          return triplets_of(g4s::graph_to_matrix(prod));
        });

  m.def((std::string("rank1_") + suffix).c_str(),
        [](std::uint64_t rows, std::uint64_t cols, IdArray<T> ri, IdArray<T> ci,
           ValArray<T> vals, ValArray<T> u, ValArray<T> w, bool conjugate) {
          auto a = coo_from_triplets<T>(rows, cols, ri, ci, vals);
          auto updated = g4s::graph_rank1_update(g4s::matrix_to_graph(a),
                                                 to_vector(u), to_vector(w),
                                                 conjugate);
          return triplets_of(g4s::graph_to_matrix(updated));
        },
        py::arg("rows"), py::arg("cols"), py::arg("row_idx"), py::arg("col_idx"),
        py::arg("values"), py::arg("u"), py::arg("w"), py::arg("conjugate") = false);
}

}  // namespace

PYBIND11_MODULE(_g4s, m) {
  m.doc() = "matrix operations executed on a gather/apply graph engine";

  bind_typed<double>(m, "real");
  bind_typed<g4s::Complex>(m, "complex");

  m.def("transform_stats",
        [](std::uint64_t rows, std::uint64_t cols, IdArray<double> ri,
           IdArray<double> ci, ValArray<double> vals) {
          auto a = coo_from_triplets<double>(rows, cols, ri, ci, vals);
          auto g = g4s::matrix_to_graph(a);
          return py::make_tuple(g.vertex_count, g.edge_count());
        },
        "vertex and edge counts of the graph a matrix transforms into");

  m.def("verify",
        [](const std::string& suite, std::uint64_t seed) {
          return g4s::run_verify(suite, seed).passed;
        },
        py::arg("suite") = "all", py::arg("seed") = 42,
        "run a property suite and report whether it passed");

  py::register_exception<g4s::Error>(m, "G4SError", PyExc_ValueError);
}
