"""Identity suites run by ``steiner-hyper verify``.

Each check yields a :class:`Check` with status ``pass``, ``fail`` or
``skip`` and, on failure, the inputs that broke it. Everything is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .bases import mobius_matrix, p_prime_inverse, p_prime_matrix, zeta_matrix
from .closed_forms import (
    diagonal_form_even,
    edge_sum_form,
    near_diagonal_check,
    near_diagonal_entrywise,
)
from .hyperform import CapExceeded, SymHypermatrix, eval_diagonal, eval_multilinear, polarize, steiner_hypermatrix
from .linalg import det, is_identity, matmul
from .resultant import hyperdet
from .sampling import child_seeds, random_hn_vector, random_rational_vector, rng_for
from .spectra import definite_check_k2
from .tree import Tree

__all__ = ["Check", "corrupt_entry", "tree_checks", "order_checks", "run_suite", "graham_pollak_value"]

PASS, FAIL, SKIP = "pass", "fail", "skip"

N1_MESSAGE = "n=1 is a degenerate case: a single vertex has no edges and every Steiner distance is 0"


@dataclass(frozen=True)
class Check:
    identity: str
    tree: str
    n: int
    k: int | None
    status: str
    detail: str = ""
    counterexample: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        rec = {"identity": self.identity, "tree": self.tree, "n": self.n, "k": self.k, "status": self.status}
        if self.detail:
            rec["detail"] = self.detail
        if self.counterexample:
            rec["counterexample"] = self.counterexample
        return rec


def graham_pollak_value(n: int) -> Fraction:
    """Determinant of the distance matrix of any tree on ``n`` vertices."""
    return Fraction(1 - n) * Fraction(-2) ** (n - 2)


def corrupt_entry(m: SymHypermatrix, index: Sequence[int], delta=1) -> SymHypermatrix:
    """Add ``delta`` to the orbit of the 0-based ``index`` (keeps symmetry)."""
    arr = m.entries.copy()
    for perm in set(itertools.permutations(index)):
        arr[perm] += Fraction(delta)
    return SymHypermatrix(arr, check=False)


def _vec(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


def tree_checks(t: Tree, label: str) -> Iterator[Check]:
    """Order-independent checks: change-of-basis relations, k=2 determinant chain."""
    n = t.n
    if n == 1:
        yield Check("tree_bases", label, n, None, SKIP, N1_MESSAGE)
        return

    def check(name: str, ok: bool, detail: str = "", cex: dict | None = None) -> Check:
        return Check(name, label, n, None, PASS if ok else FAIL, "" if ok else detail, {} if ok else (cex or {}))

    pp, inv, z, mu = p_prime_matrix(t), p_prime_inverse(t), zeta_matrix(t), mobius_matrix(t)
    yield check("p_prime_inverse", is_identity(matmul(pp, inv)), "P' X != I")
    yield check("zeta_det_one", det(z) == 1, f"det(Z) = {det(z)}")
    yield check("zeta_mobius", is_identity(matmul(z, mu)), "Z mu != I")
    cols_ok = all(-mu[i, j] == inv[i, j] for i in range(n) for j in range(n - 1))
    yield check("mobius_incidence_columns", cols_ok, "-mu and P'^-1 differ outside the last column")
    c = random_hn_vector(n, rng_for(n))
    lhs, rhs = matmul(pp, c), -matmul(z, c)
    yield check("p_prime_on_hn", bool(np.array_equal(lhs, rhs)), "P' c != -Z c", {"c": _vec(c)})
    m2 = steiner_hypermatrix(t, 2)
    got = hyperdet(m2)
    want = graham_pollak_value(n)
    yield check("graham_pollak", got == want, f"hyperdet = {got}, expected {want}")
    rep = definite_check_k2(t)
    yield check(
        "definite_k2",
        rep.d_positive_definite and rep.sign_ok,
        f"minors {[str(x) for x in rep.d_minors]}, det M = {rep.det_m}",
    )


def order_checks(
    t: Tree,
    label: str,
    k: int,
    trials: int,
    seed: int,
    m: SymHypermatrix | None = None,
    cap: int | None = None,
) -> Iterator[Check]:
    """Checks of the order-``k`` identities for one tree on ``trials`` random inputs."""
    n = t.n
    if n == 1:
        yield Check("order_identities", label, n, k, SKIP, N1_MESSAGE)
        return
    try:
        m = steiner_hypermatrix(t, k, cap=cap) if m is None else m
    except CapExceeded as exc:
        yield Check("order_identities", label, n, k, SKIP, f"infeasible: {exc}")
        return

    def run(name: str, test: Callable[[np.random.Generator], tuple[bool, str, dict]]) -> Check:
        for ss in child_seeds(seed, trials):
            ok, detail, cex = test(rng_for(ss))
            if not ok:
                return Check(name, label, n, k, FAIL, detail, cex)
        return Check(name, label, n, k, PASS)

    def edge_sum(rng):
        c = random_rational_vector(n, rng)
        a, b = edge_sum_form(t, k, c).total, eval_diagonal(m, c)
        return a == b, f"edge sum {a} != direct {b}", {"c": _vec(c)}

    yield run("edge_sum", edge_sum)

    if k % 2 == 0:

        def diag_even(rng):
            c = random_hn_vector(n, rng)
            a, b = diagonal_form_even(t, k, c), eval_diagonal(m, c)
            if a != b:
                return False, f"diagonal formula {a} != direct {b}", {"c": _vec(c)}
            if n >= 3 and not b < 0:
                return False, f"value {b} is not negative", {"c": _vec(c)}
            return True, "", {}

        yield run("diagonal_even_cnd", diag_even)
    else:

        def odd_zero(rng):
            c = random_hn_vector(n, rng)
            v = eval_diagonal(m, c)
            return v == 0, f"value {v} != 0", {"c": _vec(c)}

        yield run("odd_vanishing", odd_zero)

    def polar(rng):
        xs = [random_rational_vector(n, rng) for _ in range(k)]
        a, b = polarize(m, xs), eval_multilinear(m, xs)
        return a == b, f"polarization {a} != direct {b}", {"xs": [_vec(x) for x in xs]}

    yield run("polarization", polar)

    def near_eval(rng):
        xs = [random_rational_vector(n, rng) for _ in range(k)]
        rep = near_diagonal_check(t, k, xs, m=m)
        return rep.equal, f"left {rep.left} != right {rep.right}", {"xs": [_vec(x) for x in xs]}

    yield run("near_diagonal_eval", near_eval)

    ok, mismatches = near_diagonal_entrywise(t, k, m=m)
    if ok:
        yield Check("near_diagonal_entrywise", label, n, k, PASS)
    else:
        first = tuple(i + 1 for i in mismatches[0])
        yield Check(
            "near_diagonal_entrywise",
            label,
            n,
            k,
            FAIL,
            f"{len(mismatches)} entries differ; first at {first}",
            {"tuple": list(first)},
        )


def run_suite(
    trees: Iterable[tuple[str, Tree]],
    orders: Sequence[int],
    trials: int,
    seed: int,
    cap: int | None = None,
    corrupt: Sequence[int] | None = None,
) -> list[Check]:
    """Every check for every tree and order, in a fixed order.

    ``corrupt`` is a 1-based index tuple whose orbit in ``M`` is bumped by 1
    before the order checks run (fault injection); it applies to orders
    matching its length.
    """
    out: list[Check] = []
    for ti, (label, t) in enumerate(trees):
        out.extend(tree_checks(t, label))
        for k in orders:
            m = None
            if corrupt is not None and len(corrupt) == k and t.n > 1:
                idx = tuple(i - 1 for i in corrupt)
                if all(0 <= i < t.n for i in idx):
                    m = corrupt_entry(steiner_hypermatrix(t, k, cap=cap), idx)
            out.extend(order_checks(t, label, k, trials, seed + 1000 * ti + k, m=m, cap=cap))
    return out
