"""Eigenvalue-side evidence for the sign of the Steiner hyperdeterminant.

Everything except :func:`k2_closed_eigenvalues` and :func:`h_eigen_search`
is exact. The H-eigenpair search works in float64.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .bases import project_to_hn, reflection_matrix
from .hyperform import (
    SymHypermatrix,
    contract_modes,
    eval_diagonal,
    eval_multilinear,
    steiner_hypermatrix,
    symmetrize,
)
from .linalg import as_rational_array, det, leading_principal_minors, matmul
from .sampling import random_rational_vector, rng_for
from .tree import Tree

__all__ = [
    "EigenPair",
    "PowerRun",
    "ReflectedForm",
    "K2Census",
    "DefiniteReport",
    "QuarticReport",
    "k2_closed_eigenvalues",
    "k2_sign_census",
    "reflected_form",
    "c1_form",
    "c3_form",
    "definite_check_k2",
    "shifted_power_run",
    "h_eigen_search",
    "quartic_positivity_check",
]

log = logging.getLogger(__name__)


def k2_closed_eigenvalues(k: int) -> list[complex]:
    """Closed-form eigenvalues of the order-``k`` Steiner hypermatrix of ``K_2``.

    ``lambda_j = (1 + exp(2 pi i j / (k-1)))^(k-1) - 1`` for ``j = 0..k-2``,
    followed by ``-1`` repeated ``k - 1`` times. Whether these are H- or
    E-eigenvalues is not decided here; only their signs are used.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    lams = [(1 + cmath.exp(2j * math.pi * j / (k - 1))) ** (k - 1) - 1 for j in range(k - 1)]
    return lams + [complex(-1.0)] * (k - 1)


@dataclass(frozen=True)
class K2Census:
    k: int
    positive: int
    negative: int
    complex_pairs: int
    zeros: int
    sign: int

    @property
    def degenerate(self) -> bool:
        return self.zeros > 0

    def as_record(self) -> dict:
        return {
            "k": self.k,
            "positive": self.positive,
            "negative": self.negative,
            "complex_pairs": self.complex_pairs,
            "zeros": self.zeros,
            "sign": self.sign,
            "degenerate": self.degenerate,
        }


def k2_sign_census(k: int, tol: float = 1e-9) -> K2Census:
    """Count real-positive, real-negative, non-real and zero eigenvalues of ``K_2``.

    Non-real values come in conjugate pairs and contribute a positive factor,
    so the sign of the product is ``(-1)^negative`` unless some value is 0.
    """
    lams = k2_closed_eigenvalues(k)
    scale = 2.0 ** (k - 1)
    pos = neg = cplx = zero = 0
    for lam in lams:
        if abs(lam) <= tol * scale:
            zero += 1
        elif abs(lam.imag) <= tol * scale:
            if lam.real > 0:
                pos += 1
            else:
                neg += 1
        else:
            cplx += 1
    sign = 0 if zero else (-1) ** neg
    return K2Census(k=k, positive=pos, negative=neg, complex_pairs=cplx // 2, zeros=zero, sign=sign)


@dataclass(frozen=True)
class ReflectedForm:
    """``M`` with the reflection ``(2/n) J - I`` composed into the modes in ``mask``.

    Modes are 0-based; ``mask={3}`` for ``k = 4`` is ``M(., ., ., A .)``.
    """

    base: SymHypermatrix
    mask: frozenset

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def n(self) -> int:
        return self.base.n

    def evaluate(self, xs: Sequence) -> Fraction:
        a = reflection_matrix(self.n)
        args = [matmul(a, as_rational_array(x)) if i in self.mask else x for i, x in enumerate(xs)]
        return eval_multilinear(self.base, args)

    def realize(self) -> np.ndarray:
        """Explicit (generally non-symmetric) coefficient array."""
        a = reflection_matrix(self.n)
        return contract_modes(self.base.entries, [a if i in self.mask else None for i in range(self.k)])

    def symmetrized(self) -> SymHypermatrix:
        """Symmetric hypermatrix with the same diagonal form ``x -> F(x, ..., x)``."""
        return symmetrize(self.realize())


def reflected_form(m: SymHypermatrix, mask: Iterable[int]) -> ReflectedForm:
    mask = frozenset(int(i) for i in mask)
    if any(not 0 <= i < m.k for i in mask):
        raise ValueError(f"mask {sorted(mask)} is not a set of modes of an order-{m.k} hypermatrix")
    return ReflectedForm(base=m, mask=mask)


def c1_form(m: SymHypermatrix) -> ReflectedForm:
    """Reflection in the last mode only."""
    return reflected_form(m, {m.k - 1})


def c3_form(m: SymHypermatrix) -> ReflectedForm:
    """Reflection in every mode but the first."""
    return reflected_form(m, range(1, m.k))


@dataclass(frozen=True)
class DefiniteReport:
    n: int
    d_minors: tuple
    det_m: Fraction
    det_c: Fraction
    det_a: Fraction
    derived_sign: int

    @property
    def d_positive_definite(self) -> bool:
        return all(x > 0 for x in self.d_minors)

    @property
    def sign_ok(self) -> bool:
        expected = (-1) ** (self.n - 1)
        return self.derived_sign == expected and (self.det_m > 0) - (self.det_m < 0) == expected

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "d_minors": list(self.d_minors),
            "d_positive_definite": self.d_positive_definite,
            "det_m": self.det_m,
            "det_c": self.det_c,
            "det_a": self.det_a,
            "derived_sign": self.derived_sign,
        }


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def definite_check_k2(t: Tree) -> DefiniteReport:
    """Exact positive-definiteness chain for the distance matrix ``M`` of ``t``.

    Builds ``C = M A`` and ``D = M A + A M`` with the reflection ``A``,
    takes every leading principal minor of ``D`` (the symmetric part of
    ``C`` doubled) and reads the sign of ``det M`` off ``det C / det A``.
    """
    m = steiner_hypermatrix(t, 2).entries
    a = reflection_matrix(t.n)
    c = matmul(m, a)
    d = c + matmul(a, m)
    det_c, det_a = det(c), det(a)
    return DefiniteReport(
        n=t.n,
        d_minors=tuple(leading_principal_minors(d)),
        det_m=det(m),
        det_c=det_c,
        det_a=det_a,
        derived_sign=_sgn(det_c) * _sgn(det_a),
    )


@dataclass(frozen=True)
class EigenPair:
    """Real H-eigenpair ``A x^{k-1} = lambda x^[k-1]`` with ``||x||_k = 1``."""

    lam: float
    x: np.ndarray
    residual: float
    iterations: int = 0
    shift: float = 0.0

    def as_record(self) -> dict:
        return {
            "lambda": float(self.lam),
            "x": [float(v) for v in self.x],
            "residual": float(self.residual),
            "iterations": self.iterations,
            "shift": float(self.shift),
        }


@dataclass
class PowerRun:
    """Diagnostics from one start of the shifted iteration."""

    converged: bool
    pair: EigenPair | None
    iterations: int
    shift: float
    escalations: int = 0
    history: list = field(default_factory=list)  # objective values, one per accepted step


def _apply(a: np.ndarray, x: np.ndarray, times: int) -> np.ndarray:
    out = a
    for _ in range(times):
        out = out @ x
    return out


def _normalize(x: np.ndarray, k: int) -> np.ndarray:
    return x / np.sum(np.abs(x) ** k) ** (1.0 / k)


def _residual(a: np.ndarray, x: np.ndarray, lam: float, k: int) -> float:
    return float(np.max(np.abs(_apply(a, x, k - 1) - lam * x ** (k - 1))))


def _newton_polish(a: np.ndarray, x: np.ndarray, lam: float, k: int, steps: int = 8):
    """Newton on ``(A x^{k-1} - lam x^[k-1], sum x_i^k - 1)``; keeps the best iterate."""
    n = x.size
    best = (x, lam, _residual(a, x, lam, k))
    for _ in range(steps):
        g = _apply(a, x, k - 1)
        hess = (k - 1) * _apply(a, x, k - 2)
        F = np.concatenate([g - lam * x ** (k - 1), [np.sum(x**k) - 1.0]])
        J = np.zeros((n + 1, n + 1))
        J[:n, :n] = hess - lam * (k - 1) * np.diag(x ** (k - 2))
        J[:n, n] = -(x ** (k - 1))
        J[n, :n] = k * x ** (k - 1)
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        x = x + step[:n]
        lam = lam + step[n]
        x = _normalize(x, k)
        lam = float(x @ _apply(a, x, k - 1))
        r = _residual(a, x, lam, k)
        if r < best[2]:
            best = (x, lam, r)
        if r < 1e-14 * max(1.0, abs(lam)):
            break
    return best


def _ratio(a: np.ndarray, x: np.ndarray, k: int) -> float:
    return float(x @ _apply(a, x, k - 1)) / float(np.sum(x**k))


def shifted_power_run(
    a: np.ndarray,
    x0: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 5000,
    shift: float | None = None,
    polish_every: int = 25,
) -> PowerRun:
    """One start of a shifted ascent for a maximal H-eigenpair.

    Climbs ``f(x) = A x^k / sum x_i^k`` on the Euclidean unit sphere with
    ``x <- (grad f(x) + alpha x) / ||.||_2``. The critical points of ``f``
    are exactly the H-eigenvectors, with eigenvalue ``f(x)``. ``alpha``
    starts at ``k`` times the sum of absolute entries unless given and
    doubles whenever ``f`` decreases. Once the eigen-residual is small,
    and every ``polish_every`` steps regardless, Newton's method on the
    eigen-equations is tried; a start converges when it reaches ``tol``.
    The returned eigenvector is normalised to ``||x||_k = 1``.
    """
    k = a.ndim
    if k % 2:
        raise ValueError("H-eigenpair search needs even order")
    total = float(np.sum(np.abs(a)))
    alpha = total if shift is None else float(shift)
    x = np.asarray(x0, dtype=float)
    x = x / np.linalg.norm(x)
    lam = _ratio(a, x, k)
    run = PowerRun(converged=False, pair=None, iterations=0, shift=alpha, history=[lam])
    scale = max(1.0, float(np.max(np.abs(a))))
    noise = 1e-13 * max(total, 1.0)
    for it in range(1, max_iter + 1):
        d = float(np.sum(x**k))
        grad = k * (_apply(a, x, k - 1) - lam * x ** (k - 1)) / d
        y = grad + alpha * x
        x_new = y / np.linalg.norm(y)
        lam_new = _ratio(a, x_new, k)
        if lam_new < lam - noise:
            alpha *= 2.0
            run.escalations += 1
            continue
        x, lam = x_new, lam_new
        run.history.append(lam)
        xk = _normalize(x, k)
        r = _residual(a, xk, lam, k)
        if r < 1e-4 * scale or it % polish_every == 0 or it == max_iter:
            px, plam, pr = _newton_polish(a, xk, lam, k)
            if pr < tol:
                run.converged = True
                run.pair = EigenPair(lam=plam, x=_canonical_sign(px), residual=pr, iterations=it, shift=alpha)
                run.iterations = it
                run.shift = alpha
                return run
    run.iterations = max_iter
    run.shift = alpha
    return run


def _canonical_sign(x: np.ndarray) -> np.ndarray:
    # for even order x and -x are the same eigenvector
    nz = np.flatnonzero(np.abs(x) > 1e-12)
    if nz.size and x[nz[0]] < 0:
        return -x
    return x


def h_eigen_search(
    a,
    starts: int = 200,
    seed: int = 0,
    tol: float = 1e-10,
    max_iter: int = 5000,
    direction: str = "both",
    dedup: float = 1e-8,
) -> list[EigenPair]:
    """Multistart search for real H-eigenpairs of an even-order symmetric tensor.

    ``direction="max"`` climbs ``A x^k`` on the unit ``k``-sphere,
    ``"min"`` climbs ``-A x^k`` (and reports eigenvalues of ``A``),
    ``"both"`` does each for every start. Pairs are deduplicated and sorted
    by eigenvalue, then by eigenvector. No completeness is claimed.
    """
    if isinstance(a, SymHypermatrix):
        arr = a.to_float()
    else:
        arr = np.asarray(a, dtype=float)
    k, n = arr.ndim, arr.shape[0]
    if direction not in ("max", "min", "both"):
        raise ValueError(f"unknown direction {direction!r}")
    signs = {"max": [1.0], "min": [-1.0], "both": [1.0, -1.0]}[direction]
    found: list[EigenPair] = []
    failures = 0
    for ss in np.random.SeedSequence(seed).spawn(starts):
        x0 = np.random.default_rng(ss).standard_normal(n)
        for s in signs:
            run = shifted_power_run(s * arr, x0, tol=tol, max_iter=max_iter)
            if not run.converged:
                failures += 1
                continue
            p = run.pair
            pair = EigenPair(
                lam=s * p.lam, x=p.x, residual=_residual(arr, p.x, s * p.lam, k), iterations=p.iterations, shift=p.shift
            )
            if pair.residual >= tol:
                failures += 1
                continue
            if not any(abs(q.lam - pair.lam) < dedup * max(1.0, abs(q.lam)) and np.max(np.abs(q.x - pair.x)) < 1e-6 for q in found):
                found.append(pair)
    if failures:
        log.info("h_eigen_search: %d of %d runs did not converge", failures, starts * len(signs))
    found.sort(key=lambda p: (round(p.lam, 9), tuple(np.round(p.x, 9))))
    return found


@dataclass
class QuarticReport:
    trials: int
    values: list = field(default_factory=list)
    identity_holds: list = field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return all(v > 0 for v in self.values)

    @property
    def identity_exact(self) -> bool:
        return all(self.identity_holds)

    @property
    def min_value(self):
        return min(self.values) if self.values else None

    def as_record(self) -> dict:
        return {
            "trials": self.trials,
            "min_value": self.min_value,
            "all_positive": self.all_positive,
            "identity_exact": self.identity_exact,
        }


def quartic_positivity_check(
    t: Tree, trials: int, seed: int, samples: Sequence | None = None, m: SymHypermatrix | None = None
) -> QuarticReport:
    """Check ``(C_1 + C_3)(x, x, x, x) = 2 M(x_1..) - 2 M(x_perp..) > 0`` exactly.

    ``x_1`` is the projection of ``x`` on the all-ones direction and
    ``x_perp`` the remainder. The left side uses the explicit reflected
    arrays; the right side uses only ``M``.
    """
    m = steiner_hypermatrix(t, 4) if m is None else m
    if m.k != 4:
        raise ValueError("needs an order-4 hypermatrix")
    both_raw = c1_form(m).realize() + c3_form(m).realize()
    rng = rng_for(seed)
    xs = list(samples) if samples is not None else []
    while len(xs) < trials:
        x = random_rational_vector(t.n, rng)
        if any(v != 0 for v in x):
            xs.append(x)
    report = QuarticReport(trials=len(xs))
    for x in xs:
        x = as_rational_array(x)
        perp = project_to_hn(x)
        par = x - perp
        lhs = eval_multilinear(both_raw, [x] * 4)
        rhs = 2 * eval_diagonal(m, par) - 2 * eval_diagonal(m, perp)
        report.values.append(lhs)
        report.identity_holds.append(lhs == rhs)
    return report
