"""Batch command-line front end: ``steiner-hyper <subcommand> [options]``.

Subcommands
-----------
verify    run the exact identity suites over a grid of trees and orders
hyperdet  compute hyperdeterminants and report tree-invariance per (n, k)
eigen     H-eigenpair search on the reflected quartic, plus the K_2 census
figure    emit the SVG schematic of the nearly diagonal target
steiner   one-off Steiner distance queries

A human table goes to standard output. With ``--format records`` one JSON
object per line is written to ``--out`` (or standard output). Records hold
no timings unless ``--timing`` is given, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .figure import render_svg, schematic
from .formats import json_record, parse_prufer, read_tree
from .hyperform import CapExceeded, steiner_hypermatrix
from .resultant import DEFAULT_MONOMIAL_CAP, ResultantError, hyperdet
from .spectra import c1_form, c3_form, h_eigen_search, k2_closed_eigenvalues, k2_sign_census
from .tree import (
    Tree,
    TreeError,
    all_labeled_trees,
    broom_tree,
    caterpillar_tree,
    path_tree,
    prufer_encode,
    random_tree,
    star_tree,
    steiner_distance,
)
from .verify import FAIL, PASS, SKIP, run_suite

FAMILIES = {"path": path_tree, "star": star_tree, "caterpillar": caterpillar_tree, "broom": broom_tree}


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; serialized as the first record."""

    subcommand: str
    tree_file: str | None = None
    prufer: str | None = None
    random: int | None = None
    family: str | None = None
    n: tuple = ()
    k: tuple = ()
    trees: int = 1
    all_trees: bool = False
    trials: int = 5
    seed: int = 0
    cap: int | None = None
    monomial_cap: int = DEFAULT_MONOMIAL_CAP
    out: str | None = None
    format: str = "table"
    timing: bool = False
    corrupt: tuple | None = None
    starts: int = 200
    tol: float = 1e-10
    max_iter: int = 5000
    c3: bool = False
    census: bool = False
    vertices: tuple = ()

    def validate(self) -> None:
        sources = sum(x is not None for x in (self.tree_file, self.prufer, self.random, self.family))
        if sources > 1:
            raise ValueError("give at most one of --tree, --prufer, --random, --family")
        if self.family is not None and self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}")
        if any(x < 1 for x in self.n):
            raise ValueError("--n values must be at least 1")
        if any(x < 2 for x in self.k):
            raise ValueError("--k values must be at least 2")
        if self.trials < 0 or self.trees < 1 or self.starts < 1:
            raise ValueError("--trials must be >= 0, --trees and --starts >= 1")
        if self.format not in ("table", "records"):
            raise ValueError("--format is 'table' or 'records'")

    def as_record(self) -> dict:
        rec = {"record": "config"}
        rec.update({f.name: getattr(self, f.name) for f in dataclasses.fields(self)})
        return rec


def parse_int_list(text: str) -> tuple[int, ...]:
    """``"4"``, ``"2-13"`` or ``"2,3,5"`` (ranges may be mixed in)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _label(t: Tree) -> str:
    if t.n <= 2:
        return f"n{t.n}"
    return "prufer:" + "-".join(map(str, prufer_encode(t)))


def resolve_trees(cfg: RunConfig, default_n: Sequence[int]) -> list[tuple[str, Tree]]:
    """Trees selected by the configuration, in a canonical order."""
    if cfg.tree_file is not None:
        return [(f"file:{cfg.tree_file}", read_tree(cfg.tree_file))]
    if cfg.prufer is not None:
        t = parse_prufer(cfg.prufer)
        return [(_label(t), t)]
    if cfg.random is not None:
        t = random_tree(cfg.random, cfg.seed)
        return [(_label(t), t)]
    ns = cfg.n or tuple(default_n)
    if cfg.family is not None:
        return [(f"{cfg.family}{n}", FAMILIES[cfg.family](n)) for n in ns]
    out = []
    for n in ns:
        if cfg.all_trees:
            out.extend((_label(t), t) for t in all_labeled_trees(n))
            continue
        # one labeled tree exists for n <= 2
        for i in range(cfg.trees if n > 2 else 1):
            t = random_tree(n, cfg.seed * 100003 + 1000 * n + i)
            out.append((_label(t), t))
    return out


class Output:
    """Collects records and table lines, then writes them out."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.records: list[dict] = [cfg.as_record()]
        self.lines: list[str] = []

    def record(self, rec: dict) -> None:
        self.records.append(rec)

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def flush(self) -> None:
        if self.cfg.format == "records":
            text = "".join(json_record(r) + "\n" for r in self.records)
            if self.cfg.out:
                Path(self.cfg.out).write_text(text)
            else:
                sys.stdout.write(text)
        else:
            sys.stdout.write("\n".join(self.lines) + "\n")
            if self.cfg.out:
                Path(self.cfg.out).write_text("".join(json_record(r) + "\n" for r in self.records))


def _table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    return [fmt.format(*header), fmt.format(*("-" * w for w in widths))] + [fmt.format(*map(str, r)) for r in rows]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def cmd_verify(cfg: RunConfig) -> int:
    out = Output(cfg)
    orders = cfg.k or (2, 3, 4)
    explicit = any(x is not None for x in (cfg.tree_file, cfg.prufer, cfg.random))
    if not explicit and not cfg.n and not cfg.family and cfg.trees == 1:
        cfg = dataclasses.replace(cfg, trees=20)
    trees = resolve_trees(cfg, default_n=range(1, 7))
    t0 = time.perf_counter()
    checks = run_suite(trees, orders, cfg.trials, cfg.seed, cap=cfg.cap, corrupt=cfg.corrupt)
    elapsed = time.perf_counter() - t0
    summary: dict[str, dict[str, int]] = {}
    for c in checks:
        out.record({"record": "check", **c.as_record()})
        s = summary.setdefault(c.identity, {PASS: 0, FAIL: 0, SKIP: 0})
        s[c.status] += 1
    failures = [c for c in checks if c.status == FAIL]
    rows = [[name, s[PASS], s[FAIL], s[SKIP]] for name, s in summary.items()]
    out.lines += _table(rows, ["identity", "pass", "fail", "skip"])
    for c in checks:
        if c.status == SKIP and c.identity in ("tree_bases", "order_identities") and "n=1" in c.detail:
            out.line(f"skipped {c.tree}: {c.detail}")
            break
    for c in failures:
        out.line(f"FAIL {c.identity} tree={c.tree} n={c.n} k={c.k}: {c.detail}")
        if c.counterexample:
            out.line(f"     input: {json_record(c.counterexample)}")
    summ = {"record": "summary", "checks": len(checks), "failures": len(failures)}
    if cfg.timing:
        summ["elapsed"] = round(elapsed, 3)
    out.record(summ)
    out.line(f"{len(checks)} checks, {len(failures)} failures, {elapsed:.1f}s")
    out.flush()
    return 1 if failures else 0


def feasible_envelope(cap: int) -> str:
    parts = []
    for n in range(2, 8):
        ks = [k for k in range(2, 40) if n == 2 or math.comb(n * (k - 2) + n, n - 1) <= cap]
        if n == 2:
            parts.append("n=2: any k (Sylvester)")
        elif ks:
            parts.append(f"n={n}: k<={max(ks)}")
    return "; ".join(parts)


def cmd_hyperdet(cfg: RunConfig) -> int:
    out = Output(cfg)
    orders = cfg.k or (2,)
    trees = resolve_trees(cfg, default_n=(2, 3, 4))
    rows = []
    values: dict[tuple[int, int], set] = {}
    status = 0
    for label, t in trees:
        for k in orders:
            if t.n < 2:
                out.line(f"skipped {label}: n=1 has no gradient system to eliminate")
                continue
            t0 = time.perf_counter()
            try:
                value = hyperdet(steiner_hypermatrix(t, k, cap=cfg.cap), cap=cfg.monomial_cap, seed=cfg.seed)
            except (ResultantError, CapExceeded) as exc:
                out.line(f"n={t.n} k={k} {label}: {exc}. Feasible with this cap: {feasible_envelope(cfg.monomial_cap)}")
                out.record({"record": "infeasible", "n": t.n, "k": k, "tree": label, "reason": str(exc)})
                status = 2
                continue
            dt = time.perf_counter() - t0
            values.setdefault((t.n, k), set()).add(value)
            rec = {"record": "hyperdet", "n": t.n, "k": k, "tree": label, "value": value, "sign": _sign(value)}
            if cfg.timing:
                rec["elapsed"] = round(dt, 3)
            out.record(rec)
            rows.append([t.n, k, label, str(value), _sign(value), f"{dt:.2f}s"])
    out.lines += _table(rows, ["n", "k", "tree", "value", "sign", "time"])
    out.line()
    for (n, k), vals in sorted(values.items()):
        verdict = "invariant" if len(vals) == 1 else f"NOT invariant ({len(vals)} values)"
        count = sum(1 for r in rows if r[0] == n and r[1] == k)
        out.record({"record": "invariance", "n": n, "k": k, "trees": count, "invariant": len(vals) == 1})
        out.line(f"n={n} k={k}: {verdict} across {count} tree(s)")
        if len(vals) != 1:
            status = 1
    out.flush()
    return status


def cmd_eigen(cfg: RunConfig) -> int:
    out = Output(cfg)
    if cfg.census:
        rows = []
        for k in cfg.k or (4,):
            c = k2_sign_census(k)
            lam0 = k2_closed_eigenvalues(k)[0].real
            out.record({"record": "k2_census", **c.as_record(), "lambda0": lam0})
            rows.append([k, c.positive, c.negative, c.complex_pairs, c.zeros, c.sign, f"{lam0:.6g}"])
        out.lines += _table(rows, ["k", "positive", "negative", "complex pairs", "zeros", "sign", "lambda0"])
        out.line("eigenvalue type (H or E) of these closed forms is not decided")
        out.flush()
        return 0
    k = cfg.k[0] if cfg.k else 4
    if k % 2:
        raise ValueError("eigen needs an even order")
    trees = resolve_trees(cfg, default_n=(4,))
    forms = [("C1", c1_form)] + ([("C3", c3_form)] if cfg.c3 else [])
    for label, t in trees:
        m = steiner_hypermatrix(t, k, cap=cfg.cap)
        for name, make in forms:
            pairs = h_eigen_search(make(m).symmetrized(), starts=cfg.starts, seed=cfg.seed, tol=cfg.tol, max_iter=cfg.max_iter)
            rows = []
            for p in pairs:
                out.record({"record": "eigenpair", "form": name, "tree": label, **p.as_record()})
                rows.append([f"{p.lam:.10g}", "[" + ", ".join(f"{v:.6f}" for v in p.x) + "]", f"{p.residual:.1e}"])
            out.line(f"{name} of {label} (n={t.n}, k={k}), {cfg.starts} starts")
            out.lines += _table(rows, ["lambda", "x", "residual"])
            lam_min = min((p.lam for p in pairs), default=None)
            out.record({"record": "eigen_summary", "form": name, "tree": label, "pairs": len(pairs), "min_lambda": lam_min})
            out.line(f"min lambda found: {lam_min}")
            out.line()
    out.flush()
    return 0


def cmd_figure(cfg: RunConfig) -> int:
    n = cfg.n[0] if cfg.n else 5
    k = cfg.k[0] if cfg.k else 4
    s = schematic(n, k)
    svg = render_svg(s)
    path = cfg.out or f"schematic_n{n}_k{k}.svg"
    Path(path).write_text(svg)
    counts = s.value_counts()
    nonzero = {str(v): c for v, c in sorted(counts.items()) if v != 0}
    print(f"wrote {path}: n={n} k={k}, nonzero cells {nonzero}, zero cells {counts[Fraction(0)]}")
    if s.note:
        print(s.note)
    return 0


def cmd_steiner(cfg: RunConfig) -> int:
    out = Output(cfg)
    trees = resolve_trees(cfg, default_n=(cfg.n[0] if cfg.n else 4,))
    if not cfg.vertices:
        raise ValueError("give the query vertices, e.g. 'steiner --family star --n 4 1 2 3'")
    for label, t in trees:
        d = steiner_distance(t, cfg.vertices)
        out.record({"record": "steiner", "tree": label, "vertices": list(cfg.vertices), "distance": d})
        out.line(f"S({{{', '.join(map(str, cfg.vertices))}}}) = {d} in {label}")
    out.flush()
    return 0


COMMANDS = {"verify": cmd_verify, "hyperdet": cmd_hyperdet, "eigen": cmd_eigen, "figure": cmd_figure, "steiner": cmd_steiner}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steiner-hyper", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("tree source")
    src.add_argument("--tree", dest="tree_file", metavar="FILE", help="edge list, one 'u v' per line")
    src.add_argument("--prufer", metavar="WORD", help="Prüfer word, e.g. '4 4 2'")
    src.add_argument("--random", type=int, metavar="N", help="one uniform random tree on N vertices")
    src.add_argument("--family", choices=sorted(FAMILIES), help="built-in family, sized by --n")
    src.add_argument("--n", type=parse_int_list, default=(), help="vertex counts: 4, 2-6 or 3,5")
    src.add_argument("--trees", type=int, default=1, help="random trees per n")
    src.add_argument("--all-trees", action="store_true", help="every labeled tree on each n")
    common.add_argument("--k", type=parse_int_list, default=(), help="orders: 4, 2-13 or 3,5")
    common.add_argument("--trials", type=int, default=5, help="random inputs per identity")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=None, metavar="ENTRIES", help="largest hypermatrix (n^k)")
    common.add_argument("--monomial-cap", type=int, default=DEFAULT_MONOMIAL_CAP, help="largest Macaulay matrix")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--timing", action="store_true", help="include elapsed seconds in records")

    p = sub.add_parser("verify", parents=[common], help="exact identity suites")
    p.add_argument("--corrupt", type=parse_int_list, metavar="I,J,..", help="bump one entry orbit of M (fault injection)")
    sub.add_parser("hyperdet", parents=[common], help="hyperdeterminants and invariance")
    p = sub.add_parser("eigen", parents=[common], help="H-eigenpair search")
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--c3", action="store_true", help="also search the three-mode reflection")
    p.add_argument("--census", action="store_true", help="K_2 closed-form census for each --k")
    sub.add_parser("figure", parents=[common], help="SVG schematic")
    p = sub.add_parser("steiner", parents=[common], help="Steiner distance of a vertex set")
    p.add_argument("vertices", type=int, nargs="*")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values = {key: val for key, val in vars(ns).items() if key in fields and val is not None}
    for key in ("n", "k", "vertices", "corrupt"):
        if key in values:
            values[key] = tuple(values[key])
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.subcommand](cfg)
    except (ValueError, TreeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
