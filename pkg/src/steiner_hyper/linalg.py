"""Exact dense linear algebra over the rationals.

Matrices are 2-D numpy object arrays holding :class:`fractions.Fraction`
(or plain ``int``) entries. Determinants and inverses go through
fraction-free Bareiss elimination on integer rows, so no intermediate
rounding or rational normalisation happens inside the elimination loop.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "as_rational_array",
    "as_rational_matrix",
    "rational_identity",
    "bareiss_det",
    "det",
    "inverse",
    "matmul",
    "leading_principal_minors",
    "rank",
    "is_identity",
]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        # only exactly-representable floats are accepted implicitly
        return Fraction(float(x))
    return Fraction(x)


_vec_to_fraction = np.frompyfunc(_to_fraction, 1, 1)


def as_rational_array(values) -> np.ndarray:
    """Return an object array of Fractions with the same shape as ``values``."""
    arr = np.asarray(values, dtype=object)
    if arr.ndim == 0:
        return np.asarray(_to_fraction(arr.item()), dtype=object)
    return _vec_to_fraction(arr).astype(object)


def as_rational_matrix(rows) -> np.ndarray:
    m = as_rational_array(rows)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def rational_identity(n: int) -> np.ndarray:
    out = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two rational matrices (or matrix-vector)."""
    return np.dot(as_rational_array(a), as_rational_array(b))


def _clear_row(row: Iterable) -> tuple[list[int], int]:
    """Scale a rational row to integers; return (ints, scale)."""
    fr = [_to_fraction(x) for x in row]
    scale = lcm(1, *(f.denominator for f in fr))
    return [f.numerator * (scale // f.denominator) for f in fr], scale


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination.

    The input is copied; every division in the loop is exact.
    """
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("bareiss_det needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        rk = a[k]
        tail = rk[k + 1:]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            if f == 0:
                if piv == prev:
                    continue
                ri[k + 1:] = [(x * piv) // prev for x in ri[k + 1:]]
            else:
                ri[k + 1:] = [(x * piv - f * y) // prev for x, y in zip(ri[k + 1:], tail)]
            ri[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def det(m) -> Fraction:
    """Exact determinant of a square rational matrix."""
    m = as_rational_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"det needs a square matrix, got {m.shape}")
    rows = []
    scale = 1
    for r in m:
        ints, s = _clear_row(r)
        rows.append(ints)
        scale *= s
    return Fraction(bareiss_det(rows), scale)


def inverse(m) -> np.ndarray:
    """Exact inverse by fraction-free Gauss-Jordan on ``[m | I]``.

    Raises
    ------
    ZeroDivisionError
        If ``m`` is singular.
    """
    m = as_rational_matrix(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"inverse needs a square matrix, got {m.shape}")
    aug = []
    scales = []
    for i, r in enumerate(m):
        ints, s = _clear_row(r)
        aug.append(ints + [s if j == i else 0 for j in range(n)])
        scales.append(s)
    # row i of aug represents s_i * [m_i | e_i]; the right half is fixed up below
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            for p in range(k + 1, n):
                if aug[p][k] != 0:
                    aug[k], aug[p] = aug[p], aug[k]
                    break
            else:
                raise ZeroDivisionError("matrix is singular")
        piv = aug[k][k]
        rk = aug[k]
        for i in range(n):
            if i == k:
                continue
            ri = aug[i]
            f = ri[k]
            aug[i] = [(x * piv - f * y) // prev for x, y in zip(ri, rk)]
        prev = piv
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        d = aug[i][i]
        for j in range(n):
            out[i, j] = Fraction(aug[i][n + j], d)
    return out


def leading_principal_minors(m) -> list[Fraction]:
    """All leading principal minors ``det(m[:r, :r])`` for r = 1..n."""
    m = as_rational_matrix(m)
    return [det(m[:r, :r]) for r in range(1, m.shape[0] + 1)]


def rank(m) -> int:
    """Exact rank via fraction-free row reduction."""
    m = as_rational_matrix(m)
    rows = [_clear_row(r)[0] for r in m]
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        for i in range(r + 1, n_rows):
            f = rows[i][c]
            if f:
                rows[i] = [x * piv[c] - f * y for x, y in zip(rows[i], piv)]
        r += 1
        if r == n_rows:
            break
    return r


def is_identity(m) -> bool:
    m = as_rational_matrix(m)
    n = m.shape[0]
    return m.shape == (n, n) and bool(np.all(m == rational_identity(n)))
