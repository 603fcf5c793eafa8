"""Linear algebra over GF(2).

Matrices are 2-d numpy uint8 arrays with entries in {0, 1}; rows are
vectors.  Functions never modify their arguments.
"""

from __future__ import annotations

import numpy as np


def as_matrix(rows, width: int | None = None) -> np.ndarray:
    """Coerce to a 2-d uint8 matrix mod 2.

    An empty row list needs an explicit width so downstream shape checks
    stay meaningful.
    """
    a = np.asarray(rows, dtype=np.uint8)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, width or 0)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if width is not None and a.shape[0] == 0:
        a = a.reshape(0, width)
    return a % 2


def as_vector(v, width: int | None = None) -> np.ndarray:
    a = np.asarray(v, dtype=np.uint8).ravel() % 2
    if width is not None and a.size != width:
        raise ValueError(f"expected vector of length {width}, got {a.size}")
    return a


def rref(mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns (reduced, pivot_columns).  Zero rows are dropped, so the
    reduced matrix has exactly rank(mat) rows and is a canonical form of
    the row space: two matrices have equal row spaces iff their rref
    arrays are equal.
    """
    a = as_matrix(mat).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        lead = r + int(hits[0])
        if lead != r:
            a[[r, lead]] = a[[lead, r]]
        for i in np.nonzero(a[:, c])[0]:
            if i != r:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat) -> int:
    return rref(mat)[0].shape[0]


def reduce_vector(mat, vec) -> np.ndarray:
    """Residual of vec after eliminating against the rows of mat."""
    red, pivots = rref(mat)
    v = as_vector(vec).copy()
    for row, c in zip(red, pivots):
        if v[c]:
            v ^= row
    return v


def in_row_space(mat, vec) -> bool:
    return not reduce_vector(mat, vec).any()


def solve(a, b) -> np.ndarray | None:
    """One solution x of a @ x == b (mod 2), or None if inconsistent.

    Free variables are set to zero, which makes the result deterministic.
    """
    a = as_matrix(a)
    rows, cols = a.shape
    b = as_vector(b, rows)
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    red, pivots = rref(aug)
    x = np.zeros(cols, dtype=np.uint8)
    for row, c in zip(red, pivots):
        if c == cols:
            return None
        x[c] = row[cols]
    return x


def express_in_rows(mat, vec) -> np.ndarray | None:
    """Coefficients c with c @ mat == vec (mod 2), or None.

    Coefficients refer to the rows of mat as given, not to the reduced
    form.
    """
    a = as_matrix(mat)
    return solve(a.T, as_vector(vec, a.shape[1]))


def null_space(mat) -> np.ndarray:
    """Rows form a basis of the right kernel {x : mat @ x == 0 (mod 2)}."""
    a = as_matrix(mat)
    cols = a.shape[1]
    red, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, c in zip(red, pivots):
            if row[f]:
                basis[i, c] = 1
    return basis


def row_spaces_equal(a, b) -> bool:
    ra, _ = rref(a)
    rb, _ = rref(b)
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))
