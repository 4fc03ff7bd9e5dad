"""Symmetric hyperdeterminants as resultants of the gradient system.

Forms are dictionaries from exponent tuples to Fractions. The resultant is
normalised so that ``Res(x_1^d, ..., x_n^d) = 1``. Two variables use the
Sylvester matrix; three or more use Macaulay's quotient
``det(M) / det(M')`` where ``M'`` keeps the rows and columns of the
non-reduced monomials.

The hyperdeterminant of a symmetric hypermatrix ``A`` is taken to be the
resultant of ``A x^{k-1}`` *without* the factor ``k`` coming from
differentiating ``A(x, ..., x)``. Including the factor would multiply the
value by ``k^(n (k-1)^(n-1))``, which changes neither sign nor vanishing.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hyperform import SymHypermatrix
from .linalg import bareiss_det

__all__ = [
    "DEFAULT_MONOMIAL_CAP",
    "ResultantError",
    "PolySystem",
    "MacaulaySystem",
    "gradient_system",
    "monomials",
    "evaluate_form",
    "substitute",
    "sylvester_resultant",
    "macaulay_system",
    "macaulay_resultant",
    "hyperdet",
    "random_unimodular",
]

log = logging.getLogger(__name__)

DEFAULT_MONOMIAL_CAP = 2000

Form = dict  # exponent tuple -> Fraction


class ResultantError(RuntimeError):
    """Resultant could not be computed (cap exceeded or persistent degeneracy)."""


@dataclass(frozen=True)
class PolySystem:
    """``n`` homogeneous forms of a common degree in ``n`` variables."""

    n: int
    degree: int
    forms: tuple

    def __post_init__(self):
        if len(self.forms) != self.n:
            raise ValueError(f"need {self.n} forms, got {len(self.forms)}")
        for i, f in enumerate(self.forms):
            for e in f:
                if len(e) != self.n or sum(e) != self.degree:
                    raise ValueError(f"form {i}: monomial {e} is not of degree {self.degree} in {self.n} variables")

    def evaluate(self, x: Sequence) -> list[Fraction]:
        return [evaluate_form(f, x) for f in self.forms]


def monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``degree`` in ``n`` variables, lex-descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        c = Counter(combo)
        out.append(tuple(c[i] for i in range(n)))
    return sorted(out, reverse=True)


def evaluate_form(f: Form, x: Sequence) -> Fraction:
    total = Fraction(0)
    for e, coeff in f.items():
        term = Fraction(coeff)
        for xi, p in zip(x, e):
            term *= Fraction(xi) ** p
        total += term
    return total


def gradient_system(a: SymHypermatrix) -> PolySystem:
    """Expand ``a x^{k-1}`` into ``n`` forms of degree ``k - 1``.

    The coefficient of ``x^m`` in form ``i`` is the number of index tuples
    with multiset ``m`` times the (symmetric) entry.
    """
    n, d = a.n, a.k - 1
    forms = []
    for i in range(n):
        f = {}
        for combo in itertools.combinations_with_replacement(range(n), d):
            c = Counter(combo)
            value = a.entries[(i,) + combo]
            if value == 0:
                continue
            mult = math.factorial(d)
            for cnt in c.values():
                mult //= math.factorial(cnt)
            f[tuple(c[j] for j in range(n))] = Fraction(value) * mult
        forms.append(f)
    return PolySystem(n=n, degree=d, forms=tuple(forms))


def _poly_mul(f: Form, g: Form) -> Form:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def substitute(sys: PolySystem, b) -> PolySystem:
    """Forms ``f_i(B x)`` for an ``n x n`` integer (or rational) matrix ``B``."""
    n = sys.n
    rows = [
        {tuple(int(j == col) for j in range(n)): Fraction(b[r][col]) for col in range(n) if b[r][col] != 0}
        for r in range(n)
    ]
    one = {(0,) * n: Fraction(1)}
    forms = []
    for f in sys.forms:
        out: dict = {}
        powers: dict = {}
        for e, coeff in f.items():
            term = {(0,) * n: Fraction(coeff)}
            for var, p in enumerate(e):
                if p == 0:
                    continue
                key = (var, p)
                if key not in powers:
                    acc = one
                    for _ in range(p):
                        acc = _poly_mul(acc, rows[var])
                    powers[key] = acc
                term = _poly_mul(term, powers[key])
            for m, c in term.items():
                out[m] = out.get(m, 0) + c
        forms.append({m: c for m, c in out.items() if c != 0})
    return PolySystem(n=n, degree=sys.degree, forms=tuple(forms))


def _binary_coeffs(f: Form, degree: int) -> list[Fraction]:
    # coefficient list in descending powers of x_1
    return [Fraction(f.get((degree - i, i), 0)) for i in range(degree + 1)]


def _rational_det(rows: list[list[Fraction]]) -> Fraction:
    scale = 1
    ints = []
    for r in rows:
        den = math.lcm(1, *(Fraction(x).denominator for x in r))
        ints.append([int(Fraction(x) * den) for x in r])
        scale *= den
    return Fraction(bareiss_det(ints), scale)


def sylvester_resultant(f: Form, g: Form, deg_f: int | None = None, deg_g: int | None = None) -> Fraction:
    """Resultant of two binary forms via the Sylvester determinant.

    Degrees default to the total degree of the first monomial of each form.
    """
    if not f or not g or all(c == 0 for c in f.values()) or all(c == 0 for c in g.values()):
        raise ValueError("sylvester_resultant needs two nonzero forms")
    p = sum(next(iter(f))) if deg_f is None else deg_f
    q = sum(next(iter(g))) if deg_g is None else deg_g
    fc, gc = _binary_coeffs(f, p), _binary_coeffs(g, q)
    size = p + q
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(q):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - p - 1 - i))
    for i in range(p):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - q - 1 - i))
    return _rational_det(rows)


@dataclass(frozen=True)
class MacaulaySystem:
    """Macaulay coefficient matrix for a square system of equal-degree forms."""

    total_degree: int
    monomials: tuple
    divisor: tuple  # form used for each row
    matrix: tuple  # rows of Fractions
    reduced: tuple  # booleans per monomial

    @property
    def size(self) -> int:
        return len(self.monomials)

    def minor_rows(self) -> list[list[Fraction]]:
        keep = [i for i, r in enumerate(self.reduced) if not r]
        return [[self.matrix[i][j] for j in keep] for i in keep]


def macaulay_system(sys: PolySystem, cap: int = DEFAULT_MONOMIAL_CAP) -> MacaulaySystem:
    """Assemble the Macaulay matrix in total degree ``n (d - 1) + 1``.

    Row ``m`` uses the first form ``i`` (lowest index) with ``x_i^d | m``
    and holds the coefficients of ``(m / x_i^d) f_i``. A monomial is
    reduced when exactly one ``x_i^d`` divides it.
    """
    n, d = sys.n, sys.degree
    D = n * (d - 1) + 1
    count = math.comb(D + n - 1, n - 1)
    if count > cap:
        raise ResultantError(f"Macaulay matrix would have {count} monomials (n={n}, degree {d}); cap is {cap}")
    mons = monomials(n, D)
    index = {m: i for i, m in enumerate(mons)}
    rows, divisor, reduced = [], [], []
    for m in mons:
        divisible = [i for i in range(n) if m[i] >= d]
        i = divisible[0]
        reduced.append(len(divisible) == 1)
        divisor.append(i)
        shift = list(m)
        shift[i] -= d
        row = [Fraction(0)] * len(mons)
        for e, c in sys.forms[i].items():
            row[index[tuple(a + b for a, b in zip(shift, e))]] = Fraction(c)
        rows.append(tuple(row))
    return MacaulaySystem(
        total_degree=D, monomials=tuple(mons), divisor=tuple(divisor), matrix=tuple(rows), reduced=tuple(reduced)
    )


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> list[list[int]]:
    """Integer matrix of determinant 1 built from random elementary shears."""
    b = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # add c * column j to column i
        for r in range(n):
            b[r][i] += c * b[r][j]
    return b


def macaulay_resultant(
    sys: PolySystem, cap: int = DEFAULT_MONOMIAL_CAP, seed: int = 0, retries: int = 8
) -> Fraction:
    """Exact resultant of ``n`` forms in ``n`` variables by Macaulay's quotient.

    When the extraneous minor vanishes the system is replaced by
    ``f(B x)`` for a random determinant-1 integer ``B`` (which leaves the
    resultant unchanged) and the quotient is retried.

    Raises
    ------
    ResultantError
        If the monomial cap is exceeded or every retry is degenerate.
    """
    if any(not any(f.values()) for f in sys.forms) and sys.n >= 2:
        # fewer nonzero forms than variables always share a nontrivial zero
        return Fraction(0)
    rng = random.Random(seed)
    current = sys
    for attempt in range(retries + 1):
        mac = macaulay_system(current, cap=cap)
        denominator = _rational_det(mac.minor_rows())
        if denominator != 0:
            return _rational_det([list(r) for r in mac.matrix]) / denominator
        log.info("extraneous minor vanished (attempt %d); substituting", attempt)
        current = substitute(sys, random_unimodular(sys.n, rng))
    raise ResultantError(
        f"Macaulay extraneous factor vanished for {retries + 1} substitutions "
        f"(n={sys.n}, degree {sys.degree})"
    )


def hyperdet(a: SymHypermatrix, cap: int = DEFAULT_MONOMIAL_CAP, seed: int = 0) -> Fraction:
    """Symmetric hyperdeterminant of ``a`` (resultant of ``a x^{k-1}``)."""
    sys = gradient_system(a)
    if sys.n == 2:
        f, g = sys.forms
        if not any(f.values()) or not any(g.values()):
            return Fraction(0)
        return sylvester_resultant(f, g, sys.degree, sys.degree)
    return macaulay_resultant(sys, cap=cap, seed=seed)
