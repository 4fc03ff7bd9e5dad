"""SVG schematic of the nearly diagonal target hypermatrix as nested blocks.

Index ``(i_1, ..., i_k)`` is drawn at row ``(i_1, i_3, ...)`` and column
``(i_2, i_4, ...)`` read as mixed-radix numbers, so for ``k = 4`` the
outer ``n x n`` grid is indexed by ``(i_1, i_2)`` and each block by
``(i_3, i_4)``. Zero cells are gray; nonzero cells carry their value.
Values are read from the constructed hypermatrix.
"""

from __future__ import annotations

import itertools
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from xml.sax.saxutils import escape

from .closed_forms import near_diagonal_target
from .hyperform import SymHypermatrix

__all__ = ["Schematic", "schematic", "render_svg", "expected_cell_counts", "svg_value_counts"]

CELL = 18
GAP = 3
MARGIN = 24

_FILL = {1: "#9ecae1", -1: "#fdae6b", -2: "#de2d26"}
_ZERO_FILL = "#d9d9d9"


@dataclass(frozen=True)
class Schematic:
    n: int
    k: int
    hypermatrix: SymHypermatrix
    note: str

    @property
    def shape(self) -> tuple[int, int]:
        rows = self.n ** ((self.k + 1) // 2)
        cols = self.n ** (self.k // 2)
        return rows, cols

    def position(self, index: tuple[int, ...]) -> tuple[int, int]:
        row = col = 0
        for pos, i in enumerate(index):
            if pos % 2 == 0:
                row = row * self.n + i
            else:
                col = col * self.n + i
        return row, col

    def cells(self):
        """Yield ``(row, col, index, value)`` for every entry."""
        for idx in itertools.product(range(self.n), repeat=self.k):
            r, c = self.position(idx)
            yield r, c, idx, self.hypermatrix[idx]

    def value_counts(self) -> Counter:
        return Counter(v for *_, v in self.cells())


def schematic(n: int, k: int) -> Schematic:
    """Target hypermatrix for ``(n, k)``; odd ``k`` has no diagonal part."""
    h = near_diagonal_target(n, k)
    note = "" if k % 2 == 0 else "odd order: U alone, no diagonal term"
    return Schematic(n=n, k=k, hypermatrix=h, note=note)


def expected_cell_counts(n: int, k: int) -> Counter:
    """Counts from the entry rule: ``(-1)^(t-1)`` for ``t`` copies of ``w``."""
    out = Counter()
    for t in range(1, k):
        out[Fraction((-1) ** (t - 1))] += (n - 1) * comb(k, t)
    if k % 2 == 0:
        out[Fraction(-2)] += n - 1
    out[Fraction(0)] = n**k - sum(out.values())
    return out


def _offset(index: int, n: int, levels: int) -> int:
    # every completed block boundary at each nesting level adds a gap
    extra = 0
    size = n
    for level in range(1, levels):
        extra += (index // size) * GAP * level
        size *= n
    return index * CELL + extra


def render_svg(s: Schematic) -> str:
    """Standalone SVG document for the schematic."""
    rows, cols = s.shape
    row_levels, col_levels = (s.k + 1) // 2, s.k // 2
    width = _offset(cols - 1, s.n, col_levels) + CELL + 2 * MARGIN
    height = _offset(rows - 1, s.n, row_levels) + CELL + 2 * MARGIN + (16 if s.note else 0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f"<title>n={s.n}, k={s.k}</title>",
    ]
    for r, c, idx, v in s.cells():
        x = MARGIN + _offset(c, s.n, col_levels)
        y = MARGIN + _offset(r, s.n, row_levels)
        label = ",".join(str(i + 1) for i in idx)
        if v == 0:
            parts.append(
                f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{_ZERO_FILL}" '
                f'data-index="{label}" data-value="0"/>'
            )
            continue
        text = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        fill = _FILL.get(int(v), "#ffffff") if v.denominator == 1 else "#ffffff"
        parts.append(
            f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#333" '
            f'stroke-width="0.5" data-index="{label}" data-value="{text}"/>'
        )
        parts.append(
            f'<text x="{x + CELL / 2}" y="{y + CELL * 0.7}" font-size="9" text-anchor="middle">'
            f"{escape(text)}</text>"
        )
    if s.note:
        parts.append(f'<text x="{MARGIN}" y="{height - 8}" font-size="11">{escape(s.note)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def svg_value_counts(svg: str) -> Counter:
    """Read the cell values back out of an emitted SVG document."""
    root = ET.fromstring(svg)
    return Counter(
        Fraction(el.get("data-value")) for el in root.iter("{http://www.w3.org/2000/svg}rect") if el.get("data-value")
    )
