"""Closed-form evaluations of the Steiner k-form and the near-diagonal target.

The functions here evaluate ``M(c, ..., c)`` through edge cuts in ``O(n k)``
arithmetic, build the ``(w, n)``-supported hypermatrix ``U`` and compare the
Steiner hypermatrix against it after the zeta change of basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bases import p_matrix, zeta_matrix
from .hyperform import (
    SymHypermatrix,
    eval_diagonal,
    eval_multilinear,
    identity_hypermatrix,
    mode_transform,
    steiner_hypermatrix,
)
from .linalg import as_rational_array, matmul
from .sampling import child_seeds, random_hn_vector, rng_for
from .tree import Tree, TreeError, edge_cuts

__all__ = [
    "EdgeSumReport",
    "CNDReport",
    "NearDiagonalReport",
    "ConeMembership",
    "edge_sum_form",
    "diagonal_form_even",
    "odd_k_vanishing",
    "hn_diagonal_multilinear",
    "cnd_witness_search",
    "u_hypermatrix",
    "near_diagonal_target",
    "near_diagonal_check",
    "near_diagonal_entrywise",
    "psd_cone_membership",
    "format_record",
]


def format_record(record: dict) -> str:
    """One ``key: value`` line per field; Fractions are written as ``p/q``."""

    def fmt(v):
        if isinstance(v, Fraction):
            return f"{v.numerator}/{v.denominator}"
        if isinstance(v, (list, tuple)):
            return "[" + ", ".join(fmt(x) for x in v) + "]"
        return str(v)

    return "\n".join(f"{key}: {fmt(val)}" for key, val in record.items())


def _coordinate_sum(c: np.ndarray) -> Fraction:
    return sum(c, Fraction(0))


@dataclass(frozen=True)
class EdgeSumReport:
    """Per-edge pieces of the edge-cut expansion of ``M(c, ..., c)``.

    ``alphas[j-1]`` is ``c`` summed over the root side of ``e_j``,
    ``C`` is the total coordinate sum and ``terms[j-1]`` is
    ``C^k - alpha^k - (C - alpha)^k``.
    """

    k: int
    C: Fraction
    alphas: tuple
    terms: tuple
    total: Fraction

    @property
    def betas(self) -> tuple:
        return tuple(self.C - a for a in self.alphas)

    def as_record(self) -> dict:
        return {"k": self.k, "C": self.C, "alphas": list(self.alphas), "terms": list(self.terms), "total": self.total}


def edge_sum_form(t: Tree, k: int, c) -> EdgeSumReport:
    """Evaluate ``M(c, ..., c)`` as a sum over edges.

    >>> from steiner_hyper.tree import path_tree
    >>> edge_sum_form(path_tree(3), 2, [1, 1, 1]).total
    Fraction(8, 1)
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    c = as_rational_array(c)
    if c.shape != (t.n,):
        raise ValueError(f"expected a vector of length {t.n}")
    C = _coordinate_sum(c)
    alphas, terms = [], []
    for cut in edge_cuts(t):
        alpha = sum((c[v - 1] for v in cut.A), Fraction(0))
        alphas.append(alpha)
        terms.append(C**k - alpha**k - (C - alpha) ** k)
    return EdgeSumReport(k=k, C=C, alphas=tuple(alphas), terms=tuple(terms), total=sum(terms, Fraction(0)))


def _require_hn(c: np.ndarray) -> None:
    s = _coordinate_sum(c)
    if s != 0:
        raise ValueError(f"vector must have coordinate sum 0, got {s}")


def diagonal_form_even(t: Tree, k: int, c) -> Fraction:
    """``-2 * sum_e <a'_e, c>^k`` for ``c`` with zero coordinate sum and even ``k``."""
    if k % 2:
        raise ValueError("diagonal_form_even needs even k")
    c = as_rational_array(c)
    _require_hn(c)
    return -2 * sum((x**k for x in matmul(p_matrix(t), c)), Fraction(0))


def odd_k_vanishing(t: Tree, k: int, c, m: SymHypermatrix | None = None) -> Fraction:
    """Direct value of ``M(c, ..., c)`` for odd ``k`` and zero-sum ``c`` (always 0)."""
    if k % 2 == 0 or k < 3:
        raise ValueError("odd_k_vanishing needs odd k >= 3")
    c = as_rational_array(c)
    _require_hn(c)
    m = steiner_hypermatrix(t, k) if m is None else m
    return eval_diagonal(m, c)


def hn_diagonal_multilinear(t: Tree, k: int, cs: Sequence) -> Fraction:
    """``-2 * sum_e prod_i (P c_i)_e``: the diagonalised multilinear form on zero-sum vectors."""
    if k % 2:
        raise ValueError("needs even k")
    if len(cs) != k:
        raise ValueError(f"need {k} vectors")
    p = p_matrix(t)
    coords = []
    for c in cs:
        c = as_rational_array(c)
        _require_hn(c)
        coords.append(matmul(p, c))
    total = Fraction(0)
    for e in range(t.n - 1):
        prod = Fraction(1)
        for v in coords:
            prod *= v[e]
        total += prod
    return -2 * total


@dataclass
class CNDReport:
    k: int
    trials: int
    values: list = field(default_factory=list)
    certificates: list = field(default_factory=list)  # a nonzero edge sum exists per sample
    witnesses: list = field(default_factory=list)

    @property
    def max_value(self) -> Fraction | None:
        return max(self.values) if self.values else None

    @property
    def all_negative(self) -> bool:
        return all(v < 0 for v in self.values)

    @property
    def certified(self) -> bool:
        return all(self.certificates)

    def as_record(self) -> dict:
        return {
            "k": self.k,
            "trials": self.trials,
            "max_value": self.max_value,
            "all_negative": self.all_negative,
            "certified": self.certified,
        }


def cnd_witness_search(t: Tree, k: int, trials: int, seed: int) -> CNDReport:
    """Sample zero-sum vectors and record ``M(c, ..., c)`` for even ``k``.

    Each sample also records whether some edge has a nonzero root-side sum,
    which is what forces the value below zero.
    """
    if k % 2:
        raise ValueError("needs even k")
    if t.n < 2:
        raise TreeError("needs n >= 2")
    report = CNDReport(k=k, trials=trials)
    for ss in child_seeds(seed, trials):
        c = random_hn_vector(t.n, rng_for(ss))
        er = edge_sum_form(t, k, c)
        report.values.append(er.total)
        report.certificates.append(any(a != 0 for a in er.alphas))
        report.witnesses.append(c)
    return report


def u_hypermatrix(n: int, k: int) -> SymHypermatrix:
    """Hypermatrix supported on tuples over ``{w, n}`` with ``w < n``.

    If ``w`` occurs ``t`` times (``1 <= t <= k-1``) and the root ``n`` fills
    the rest, the entry is ``(-1)^(t-1)``; every other entry is 0.
    """
    if n < 2 or k < 2:
        raise ValueError("needs n >= 2 and k >= 2")
    arr = np.full((n,) * k, Fraction(0), dtype=object)
    root = n - 1
    for w in range(n - 1):
        for mask in itertools.product((False, True), repeat=k):
            t = sum(mask)
            if 1 <= t <= k - 1:
                idx = tuple(w if b else root for b in mask)
                arr[idx] = Fraction((-1) ** (t - 1))
    return SymHypermatrix(arr, check=False)


def near_diagonal_target(n: int, k: int) -> SymHypermatrix:
    """``U - 2 (I_{n-1} + [0])`` for even ``k``, ``U`` for odd ``k``."""
    u = u_hypermatrix(n, k)
    if k % 2:
        return u
    return u - 2 * identity_hypermatrix(n, k, pad_zero_last=True)


@dataclass(frozen=True)
class NearDiagonalReport:
    k: int
    left: Fraction
    right: Fraction

    @property
    def equal(self) -> bool:
        return self.left == self.right

    def as_record(self) -> dict:
        return {"k": self.k, "left": self.left, "right": self.right, "equal": self.equal}


def near_diagonal_check(t: Tree, k: int, xs: Sequence, m: SymHypermatrix | None = None) -> NearDiagonalReport:
    """Compare ``M(x_1..x_k)`` with ``target(Z x_1, ..., Z x_k)``."""
    if len(xs) != k:
        raise ValueError(f"need {k} vectors")
    m = steiner_hypermatrix(t, k) if m is None else m
    z = zeta_matrix(t)
    left = eval_multilinear(m, xs)
    right = eval_multilinear(near_diagonal_target(t.n, k), [matmul(z, as_rational_array(x)) for x in xs])
    return NearDiagonalReport(k=k, left=left, right=right)


def near_diagonal_entrywise(t: Tree, k: int, m: SymHypermatrix | None = None) -> tuple[bool, list]:
    """Entrywise check that ``M`` is the zeta transform of the target.

    Returns ``(ok, mismatches)`` with 0-based index tuples of differing
    entries of ``M`` and ``mode_transform(target, Z)``.
    """
    m = steiner_hypermatrix(t, k) if m is None else m
    rebuilt = mode_transform(near_diagonal_target(t.n, k), zeta_matrix(t))
    diff = np.argwhere(m.entries != rebuilt.entries)
    mismatches = [tuple(int(i) for i in row) for row in diff]
    return not mismatches, mismatches


@dataclass(frozen=True)
class ConeMembership:
    """Outcome of the nonnegativity test for a vector with coordinate sum 1.

    ``form_nonnegative`` is ``M(c, ..., c) >= 0``; ``norm_condition`` is
    ``sum_e alpha_e^k + sum_e (1 - alpha_e)^k <= n - 1``; ``on_boundary``
    flags exact equality (form value 0).
    """

    form_value: Fraction
    norm_sum: Fraction
    bound: int
    form_nonnegative: bool
    norm_condition: bool
    on_boundary: bool

    @property
    def agree(self) -> bool:
        return self.form_nonnegative == self.norm_condition

    def as_pair(self) -> tuple[bool, bool]:
        return self.form_nonnegative, self.norm_condition


def psd_cone_membership(t: Tree, k: int, c) -> ConeMembership:
    """Test ``M(c, ..., c) >= 0`` directly and through the edge-sum norm bound.

    The edge coordinates are the uncentered root-side sums ``alpha_e``;
    with coordinate sum 1 the edge-cut expansion gives
    ``M(c..c) = (n-1) - sum alpha_e^k - sum (1-alpha_e)^k``.
    """
    if k % 2:
        raise ValueError("needs even k")
    c = as_rational_array(c)
    s = _coordinate_sum(c)
    if s != 1:
        raise ValueError(f"vector must have coordinate sum 1, got {s}")
    value = eval_diagonal(steiner_hypermatrix(t, k), c)
    er = edge_sum_form(t, k, c)
    norm_sum = sum((a**k + (1 - a) ** k for a in er.alphas), Fraction(0))
    bound = t.n - 1
    return ConeMembership(
        form_value=value,
        norm_sum=norm_sum,
        bound=bound,
        form_nonnegative=value >= 0,
        norm_condition=norm_sum <= bound,
        on_boundary=value == 0,
    )
