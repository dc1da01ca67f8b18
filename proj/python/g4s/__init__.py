# Copyright (c) 2026 The G4S Authors
# SPDX-License-Identifier: Apache-2.0
"""Matrix operations executed on a gather/apply graph engine.

Accepts numpy dense arrays and anything with a scipy-style ``tocoo()``.
Sparse results come back as ``(rows, cols, row_idx, col_idx, values)``
triplets unless scipy is available, in which case they are COO matrices.
"""

import numpy as np

try:
    from . import _g4s
except ImportError:  # in-tree builds put the module next to the package
    import _g4s

try:
    import scipy.sparse as _sparse
except ImportError:
    _sparse = None

__all__ = ["mv", "add", "mm", "compose", "rank1", "transform_stats", "verify"]


def _triplets(a):
    """Shape plus coordinate arrays for a dense array or sparse matrix."""
    if _sparse is not None and _sparse.issparse(a):
        coo = a.tocoo().copy()
        coo.sum_duplicates()
        return (
            int(coo.shape[0]),
            int(coo.shape[1]),
            coo.row.astype(np.uint64),
            coo.col.astype(np.uint64),
            np.asarray(coo.data),
        )
    dense = np.asarray(a)
    if dense.ndim != 2:
        raise ValueError("expected a 2-D array or a sparse matrix")
    ri, ci = np.nonzero(dense)
    return (
        int(dense.shape[0]),
        int(dense.shape[1]),
        ri.astype(np.uint64),
        ci.astype(np.uint64),
        dense[ri, ci],
    )


def _is_complex(*arrays):
    return any(np.iscomplexobj(a) for a in arrays)


def _result(rows, cols, ri, ci, values):
    if _sparse is not None:
        return _sparse.coo_matrix((values, (ri, ci)), shape=(rows, cols))
    return rows, cols, ri, ci, values


def mv(a, x, workers=0):
    """Matrix-vector product a @ x."""
    rows, cols, ri, ci, vals = _triplets(a)
    x = np.asarray(x)
    if _is_complex(vals, x):
        return _g4s.mv_complex(rows, cols, ri, ci,
                               vals.astype(np.complex128),
                               x.astype(np.complex128), workers)
    return _g4s.mv_real(rows, cols, ri, ci, vals.astype(np.float64),
                        x.astype(np.float64), workers)


def add(a, b):
    """Sparse sum a + b."""
    rows, cols, ari, aci, avals = _triplets(a)
    brows, bcols, bri, bci, bvals = _triplets(b)
    if _is_complex(avals, bvals):
        out = _g4s.add_complex(rows, cols, ari, aci, avals.astype(np.complex128),
                               bri, bci, bvals.astype(np.complex128))
    else:
        out = _g4s.add_real(rows, cols, ari, aci, avals.astype(np.float64),
                            bri, bci, bvals.astype(np.float64))
    del brows, bcols
    return _result(*out)


def mm(a, b, workers=0):
    """Product of sparse a with a dense block b."""
    rows, cols, ri, ci, vals = _triplets(a)
    b = np.asarray(b)
    if _is_complex(vals, b):
        return _g4s.mm_complex(rows, cols, ri, ci, vals.astype(np.complex128),
                               b.astype(np.complex128), workers)
    return _g4s.mm_real(rows, cols, ri, ci, vals.astype(np.float64),
                        b.astype(np.float64), workers)


def compose(a, b, workers=0):
    """Sparse product a @ b computed by composing the two graphs."""
    ar, ac, ari, aci, avals = _triplets(a)
    br, bc, bri, bci, bvals = _triplets(b)
    if _is_complex(avals, bvals):
        out = _g4s.compose_complex(ar, ac, ari, aci, avals.astype(np.complex128),
                                   br, bc, bri, bci, bvals.astype(np.complex128),
                                   workers)
    else:
        out = _g4s.compose_real(ar, ac, ari, aci, avals.astype(np.float64),
                                br, bc, bri, bci, bvals.astype(np.float64),
                                workers)
    return _result(*out)


def rank1(a, u, w, conjugate=False):
    """Rank-1 update a + u w^T (or u w^H with conjugate=True)."""
    rows, cols, ri, ci, vals = _triplets(a)
    u = np.asarray(u)
    w = np.asarray(w)
    if _is_complex(vals, u, w):
        out = _g4s.rank1_complex(rows, cols, ri, ci, vals.astype(np.complex128),
                                 u.astype(np.complex128), w.astype(np.complex128),
                                 conjugate)
    else:
        out = _g4s.rank1_real(rows, cols, ri, ci, vals.astype(np.float64),
                              u.astype(np.float64), w.astype(np.float64),
                              conjugate)
    return _result(*out)


def transform_stats(a):
    """Vertex and edge counts of the graph a matrix transforms into."""
    rows, cols, ri, ci, vals = _triplets(a)
    return _g4s.transform_stats(rows, cols, ri, ci, np.real(vals).astype(np.float64))


def verify(suite="all", seed=42):
    """Run one of the built-in property suites; returns True on success."""
    return _g4s.verify(suite, seed)
