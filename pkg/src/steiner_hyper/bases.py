"""Change-of-basis matrices attached to a tree rooted at ``n``.

All matrices are exact (object arrays of Fractions) with 0-based row and
column indices standing for vertices ``1..n``. Row/column ``j - 1`` of the
edge-indexed matrices corresponds to edge ``e_j`` (``j < n``).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .linalg import as_rational_array, rational_identity
from .tree import Tree, TreeError, edge_cuts

__all__ = [
    "p_matrix",
    "p_prime_matrix",
    "p_prime_inverse",
    "incidence_matrix",
    "zeta_matrix",
    "mobius_matrix",
    "reflection_matrix",
    "project_to_hn",
    "depth_order",
]


def _need_edges(t: Tree) -> None:
    if t.n < 2:
        raise TreeError("this construction needs a tree with at least one edge (n >= 2)")


def p_matrix(t: Tree) -> np.ndarray:
    """``(n-1) x n`` matrix whose row ``j-1`` is the centered root-side indicator of ``e_j``."""
    _need_edges(t)
    return np.vstack([cut.a_centered for cut in edge_cuts(t)])


def p_prime_matrix(t: Tree) -> np.ndarray:
    """:func:`p_matrix` with an all-ones last row; square and invertible."""
    return np.vstack([p_matrix(t), np.full(t.n, Fraction(1), dtype=object)])


def incidence_matrix(t: Tree) -> np.ndarray:
    """Oriented incidence matrix, ``n x (n-1)``; edge ``e_j`` points from ``j`` to its parent."""
    _need_edges(t)
    out = np.full((t.n, t.n - 1), Fraction(0), dtype=object)
    for j in range(1, t.n):
        out[j - 1, j - 1] = Fraction(-1)
        out[t.parent(j) - 1, j - 1] = Fraction(1)
    return out


def p_prime_inverse(t: Tree) -> np.ndarray:
    """Closed-form inverse of :func:`p_prime_matrix`.

    The first ``n - 1`` columns are the incidence matrix with every edge
    oriented toward the root side; the last column is ``1/n`` throughout.
    """
    last = np.full((t.n, 1), Fraction(1, t.n), dtype=object)
    return np.hstack([incidence_matrix(t), last])


def zeta_matrix(t: Tree) -> np.ndarray:
    """Ancestor indicator: entry ``(x, y)`` is 1 iff ``x`` lies on the path from ``y`` to the root."""
    _need_edges(t)
    z = np.full((t.n, t.n), Fraction(0), dtype=object)
    for y in range(1, t.n + 1):
        x = y
        while x is not None:
            z[x - 1, y - 1] = Fraction(1)
            x = t.parent(x)
    return z


def mobius_matrix(t: Tree) -> np.ndarray:
    """Inverse of :func:`zeta_matrix`.

    Ones on the diagonal and ``-1`` at ``(x, y)`` whenever ``y`` is a child
    of ``x``. The orientation was fixed by checking ``Z @ mu == I``.
    """
    _need_edges(t)
    mu = rational_identity(t.n)
    for y in range(1, t.n):
        mu[t.parent(y) - 1, y - 1] = Fraction(-1)
    return mu


def reflection_matrix(n: int) -> np.ndarray:
    """``(2/n) J - I``: fixes the all-ones direction and negates its complement."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return np.full((n, n), Fraction(2, n), dtype=object) - rational_identity(n)


def project_to_hn(c) -> np.ndarray:
    """Orthogonal projection onto the coordinate-sum-zero hyperplane."""
    c = as_rational_array(c)
    return c - sum(c, Fraction(0)) / len(c)


def depth_order(t: Tree) -> list[int]:
    """Vertices sorted root first, then by depth (ties by label).

    Conjugating :func:`zeta_matrix` by this order makes it upper triangular.
    """
    return sorted(range(1, t.n + 1), key=lambda v: (t.depth(v), v))

