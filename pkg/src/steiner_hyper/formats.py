"""Text formats: tree edge lists, Prüfer words, hypermatrices, JSON records."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

import numpy as np

from .hyperform import SymHypermatrix
from .tree import Tree, TreeError, build_tree, prufer_decode

__all__ = [
    "parse_tree",
    "read_tree",
    "format_tree",
    "parse_prufer",
    "dump_hypermatrix",
    "load_hypermatrix",
    "fraction_str",
    "to_jsonable",
    "json_record",
]


def parse_tree(text: str) -> Tree:
    """One ``u v`` edge per line; blank lines and ``#`` comments are skipped.

    A file holding the single token ``1`` denotes the one-vertex tree.
    """
    edges = []
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if lines == ["1"]:
        return build_tree([], n=1)
    for lineno, line in enumerate(lines, 1):
        parts = line.split()
        if len(parts) != 2:
            raise TreeError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise TreeError(f"line {lineno}: non-integer vertex label in {line!r}") from None
    return build_tree(edges)


def read_tree(path) -> Tree:
    return parse_tree(Path(path).read_text())


def format_tree(t: Tree) -> str:
    if t.n == 1:
        return "1\n"
    return "".join(f"{u} {v}\n" for u, v in t.edges)


def parse_prufer(text: str, n: int | None = None) -> Tree:
    """Whitespace- or comma-separated Prüfer word on a single line."""
    tokens = text.replace(",", " ").split()
    return prufer_decode([int(x) for x in tokens], n=n)


def fraction_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def dump_hypermatrix(h: SymHypermatrix | np.ndarray) -> str:
    """Header ``k n`` then every entry as ``p/q``, lexicographic index order.

    A 2-D array (a matrix) is written with ``k = 2``.
    """
    arr = h.entries if isinstance(h, SymHypermatrix) else np.asarray(h, dtype=object)
    k, n = arr.ndim, arr.shape[0]
    lines = [f"{k} {n}"]
    lines += [fraction_str(arr[idx]) for idx in itertools.product(range(n), repeat=k)]
    return "\n".join(lines) + "\n"


def load_hypermatrix(text: str, symmetric: bool = True) -> SymHypermatrix | np.ndarray:
    """Inverse of :func:`dump_hypermatrix`; validates symmetry unless told not to."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("missing 'k n' header")
    k, n = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != n**k:
        raise ValueError(f"header says {n}^{k} = {n**k} entries, found {len(body)}")
    arr = np.array([Fraction(x) for x in body], dtype=object).reshape((n,) * k)
    if symmetric:
        return SymHypermatrix(arr, check=True)
    return arr


def to_jsonable(v):
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, np.ndarray):
        return [to_jsonable(x) for x in v.tolist()]
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if isinstance(v, Tree):
        return [list(e) for e in v.edges]
    return v


def json_record(record: dict) -> str:
    """Single-line JSON with sorted keys, so reruns are byte-identical."""
    return json.dumps(to_jsonable(record), sort_keys=True, separators=(",", ":"))


def write_records(path, records: Iterable[dict]) -> None:
    with open(path, "w") as fh:
        for r in records:
            fh.write(json_record(r) + "\n")
