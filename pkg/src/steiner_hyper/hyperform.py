"""Dense symmetric hypermatrices over the rationals and their multilinear forms."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .linalg import as_rational_array, as_rational_matrix
from .tree import Tree

__all__ = [
    "DEFAULT_ENTRY_CAP",
    "CapExceeded",
    "SymHypermatrix",
    "steiner_hypermatrix",
    "identity_hypermatrix",
    "symmetrize",
    "contract_modes",
    "eval_multilinear",
    "eval_diagonal",
    "eval_gradient",
    "mode_transform",
    "polarize",
    "ones",
    "basis_vector",
]

DEFAULT_ENTRY_CAP = 10**7


class CapExceeded(ValueError):
    """A dense construction would exceed the configured entry cap."""


def _check_cap(n: int, k: int, cap: int | None) -> None:
    cap = DEFAULT_ENTRY_CAP if cap is None else cap
    if n**k > cap:
        raise CapExceeded(f"n^k = {n}^{k} = {n**k} entries exceeds the cap of {cap}")


def _integerize(arr: np.ndarray) -> tuple[np.ndarray, int]:
    """Write a rational array as ``ints / den`` with a common denominator."""
    flat = arr.ravel()
    den = math.lcm(1, *{Fraction(x).denominator for x in flat})
    ints = np.array([int(Fraction(x) * den) for x in flat], dtype=object).reshape(arr.shape)
    return ints, den


def _is_symmetric(arr: np.ndarray) -> bool:
    k = arr.ndim
    if k < 2:
        return True
    # a transposition and a k-cycle generate every permutation of the modes
    swap = (1, 0) + tuple(range(2, k))
    cycle = tuple(range(1, k)) + (0,)
    return bool(np.array_equal(arr, arr.transpose(swap)) and np.array_equal(arr, arr.transpose(cycle)))


class SymHypermatrix:
    """Fully symmetric order-``k``, dimension-``n`` array of exact rationals.

    Parameters
    ----------
    entries
        Array-like of shape ``(n,) * k``. Converted to Fractions.
    check
        Verify full symmetry (raises ``ValueError`` when violated).
    cap
        Largest allowed number of entries.
    """

    def __init__(self, entries, *, check: bool = True, cap: int | None = None):
        arr = as_rational_array(entries)
        if arr.ndim < 1 or len(set(arr.shape)) != 1:
            raise ValueError(f"a hypermatrix needs equal dimensions, got shape {arr.shape}")
        _check_cap(arr.shape[0], arr.ndim, cap)
        if check and not _is_symmetric(arr):
            raise ValueError("entries are not invariant under permutation of indices")
        arr.flags.writeable = False
        self._entries = arr

    @property
    def k(self) -> int:
        return self._entries.ndim

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __getitem__(self, index) -> Fraction:
        return self._entries[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymHypermatrix):
            return NotImplemented
        return self._entries.shape == other._entries.shape and bool(
            np.array_equal(self._entries, other._entries)
        )

    __hash__ = None

    def __add__(self, other: SymHypermatrix) -> SymHypermatrix:
        return SymHypermatrix(self._entries + other._entries, check=False)

    def __sub__(self, other: SymHypermatrix) -> SymHypermatrix:
        return SymHypermatrix(self._entries - other._entries, check=False)

    def __mul__(self, scalar) -> SymHypermatrix:
        return SymHypermatrix(self._entries * Fraction(scalar), check=False)

    __rmul__ = __mul__

    def __neg__(self) -> SymHypermatrix:
        return SymHypermatrix(-self._entries, check=False)

    def __repr__(self) -> str:
        return f"SymHypermatrix(k={self.k}, n={self.n})"

    def is_symmetric(self) -> bool:
        return _is_symmetric(self._entries)

    @cached_property
    def _integer_form(self) -> tuple[np.ndarray, int]:
        return _integerize(self._entries)

    def to_float(self) -> np.ndarray:
        return self._entries.astype(float)

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """``(index, value)`` pairs with 0-based indices, in lexicographic order."""
        return [
            (idx, self._entries[idx])
            for idx in itertools.product(range(self.n), repeat=self.k)
            if self._entries[idx] != 0
        ]


def steiner_hypermatrix(t: Tree, k: int, cap: int | None = None) -> SymHypermatrix:
    """Order-``k`` Steiner distance hypermatrix of ``t``.

    Entry ``(i_1, ..., i_k)`` (0-based, vertex ``i + 1``) is the Steiner
    distance of ``{i_1 + 1, ..., i_k + 1}``.
    """
    if k < 1:
        raise ValueError("order k must be positive")
    n = t.n
    _check_cap(n, k, cap)
    total = np.zeros((n,) * k, dtype=np.int64)
    for j in range(1, n):
        sub = t.subtree(j)
        below = np.array([v in sub for v in range(1, n + 1)])
        some_below = np.zeros((n,) * k, dtype=bool)
        all_below = np.ones((n,) * k, dtype=bool)
        for mode in range(k):
            shape = [1] * k
            shape[mode] = n
            b = below.reshape(shape)
            some_below = some_below | b
            all_below = all_below & b
        total += some_below & ~all_below
    return SymHypermatrix(total.astype(object), check=False, cap=cap)


def identity_hypermatrix(n: int, k: int, pad_zero_last: bool = False) -> SymHypermatrix:
    """Diagonal hypermatrix of ones; with ``pad_zero_last`` the last diagonal entry is 0."""
    arr = np.full((n,) * k, Fraction(0), dtype=object)
    for i in range(n - 1 if pad_zero_last else n):
        arr[(i,) * k] = Fraction(1)
    return SymHypermatrix(arr, check=False)


def symmetrize(arr) -> SymHypermatrix:
    """Average of ``arr`` over all permutations of its modes."""
    arr = as_rational_array(arr)
    k = arr.ndim
    perms = list(itertools.permutations(range(k)))
    total = sum((arr.transpose(p) for p in perms), np.zeros(arr.shape, dtype=object))
    return SymHypermatrix(total / len(perms), check=False)


def _vector(x, n: int) -> np.ndarray:
    v = as_rational_array(x)
    if v.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {v.shape}")
    return v


def ones(n: int) -> np.ndarray:
    return np.full(n, Fraction(1), dtype=object)


def basis_vector(n: int, i: int) -> np.ndarray:
    """Elementary vector with a 1 in 0-based position ``i``."""
    v = np.full(n, Fraction(0), dtype=object)
    v[i] = Fraction(1)
    return v


def contract_modes(arr: np.ndarray, matrices: Sequence[np.ndarray | None]) -> np.ndarray:
    """Compose mode ``j`` of ``arr`` with ``matrices[j]`` (``None`` leaves it alone).

    The result ``B`` satisfies ``B(x_1, ..., x_k) = arr(P_1 x_1, ..., P_k x_k)``.
    """
    k = arr.ndim
    if len(matrices) != k:
        raise ValueError(f"need {k} mode matrices, got {len(matrices)}")
    out = arr
    for p in matrices:
        if p is None:
            out = np.moveaxis(out, 0, -1)
            continue
        p = as_rational_matrix(p)
        # tensordot appends the new axis last, so after k steps the order is restored
        out = np.tensordot(out, p, axes=([0], [0]))
    return out


def mode_transform(a: SymHypermatrix, p) -> SymHypermatrix:
    """The hypermatrix ``B`` with ``B(x_1, ..., x_k) = a(P x_1, ..., P x_k)``.

    ``p`` may be rectangular (``n x m``), giving a dimension-``m`` result.
    """
    p = as_rational_matrix(p)
    if p.shape[0] != a.n:
        raise ValueError(f"matrix with {p.shape[0]} rows cannot act on dimension {a.n}")
    return SymHypermatrix(contract_modes(a.entries, [p] * a.k), check=False)


def eval_multilinear(a: SymHypermatrix | np.ndarray, xs: Sequence, method: str = "direct") -> Fraction:
    """Exact value of ``sum_i a_i x_{1,i_1} ... x_{k,i_k}``.

    ``method="direct"`` sums over all ``n**k`` index tuples; ``"contract"``
    contracts one mode at a time. Both are exact and must agree. Plain object
    arrays (e.g. non-symmetric reflected forms) are accepted as well.
    """
    if isinstance(a, SymHypermatrix):
        arr = a.entries
    else:
        arr = as_rational_array(a)
    k, n = arr.ndim, arr.shape[0]
    if len(xs) != k:
        raise ValueError(f"need {k} vectors, got {len(xs)}")
    vecs = [_vector(x, n) for x in xs]
    if method == "direct":
        if isinstance(a, SymHypermatrix):
            ints, den = a._integer_form
        else:
            ints, den = _integerize(arr)
        outer = np.array(1, dtype=object)
        for v in vecs:
            vi, dv = _integerize(v)
            outer = np.multiply.outer(outer, vi)
            den *= dv
        return Fraction(int(np.sum(ints * outer)), den)
    if method == "contract":
        out = arr
        for v in reversed(vecs):
            out = np.dot(out, v)
        return Fraction(out.item() if isinstance(out, np.ndarray) else out)
    raise ValueError(f"unknown method {method!r}")


def eval_diagonal(a: SymHypermatrix, x) -> Fraction:
    """The k-form ``a(x, ..., x)``."""
    return eval_multilinear(a, [x] * a.k)


def eval_gradient(a: SymHypermatrix, x) -> np.ndarray:
    """Vector ``a x^{k-1}``: component ``i`` is ``sum a_{i j_2..j_k} x_{j_2}..x_{j_k}``.

    No factor ``k`` is applied.
    """
    v = _vector(x, a.n)
    out = a.entries
    for _ in range(a.k - 1):
        out = np.dot(out, v)
    return as_rational_array(out)


def polarize(a: SymHypermatrix, xs: Sequence) -> Fraction:
    """Recover ``a(x_1, ..., x_k)`` from diagonal values only.

    Uses the finite-difference expansion
    ``(1/k!) sum_{S subset [k]} (-1)^{k-|S|} a~(sum_{i in S} x_i)``,
    where ``a~(x) = a(x, ..., x)``.
    """
    k = a.k
    if len(xs) != k:
        raise ValueError(f"need {k} vectors, got {len(xs)}")
    vecs = [_vector(x, a.n) for x in xs]
    zero = np.full(a.n, Fraction(0), dtype=object)
    total = Fraction(0)
    for r in range(k + 1):
        sign = -1 if (k - r) % 2 else 1
        for subset in itertools.combinations(range(k), r):
            s = sum((vecs[i] for i in subset), zero)
            total += sign * eval_diagonal(a, s)
    return total / math.factorial(k)
