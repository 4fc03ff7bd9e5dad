import itertools
from fractions import Fraction

import pytest

from steiner_hyper.closed_forms import near_diagonal_target
from steiner_hyper.figure import expected_cell_counts, render_svg, schematic, svg_value_counts

F = Fraction


def test_n5_k4_counts():
    counts = schematic(5, 4).value_counts()
    assert counts == {F(0): 565, F(1): 32, F(-1): 24, F(-2): 4}
    assert sum(counts.values()) == 5**4


def test_n2_k2():
    s = schematic(2, 2)
    assert s.shape == (2, 2)
    assert s.hypermatrix.entries.tolist() == [[-2, 1], [1, 0]]
    assert s.note == ""


@pytest.mark.parametrize("n, k", [(2, 2), (3, 3), (4, 4), (5, 4), (3, 5), (3, 6)])
def test_counts_match_entry_rule(n, k):
    counts = schematic(n, k).value_counts()
    assert counts == expected_cell_counts(n, k)
    nonzero = sum(c for v, c in counts.items() if v != 0)
    assert nonzero == (n - 1) * (2**k - 2) + (n - 1) * (k % 2 == 0)


def test_odd_note():
    s = schematic(3, 3)
    assert "odd" in s.note
    assert F(-2) not in s.value_counts()
    assert "odd order" in render_svg(s)


@pytest.mark.parametrize("n, k", [(3, 2), (5, 4), (3, 3)])
def test_positions_are_a_bijection(n, k):
    s = schematic(n, k)
    rows, cols = s.shape
    seen = {s.position(idx) for idx in itertools.product(range(n), repeat=k)}
    assert len(seen) == n**k == rows * cols
    assert all(0 <= r < rows and 0 <= c < cols for r, c in seen)


def test_outer_grid_is_first_two_indices():
    s = schematic(5, 4)
    r, c = s.position((2, 3, 0, 0))
    assert (r // 5, c // 5) == (2, 3)


def test_svg_readback_and_values():
    s = schematic(5, 4)
    svg = render_svg(s)
    assert svg_value_counts(svg) == s.value_counts()
    target = near_diagonal_target(5, 4)
    assert 'data-index="1,1,1,1" data-value="-2"' in svg
    assert target[0, 0, 0, 0] == -2
    assert svg == render_svg(schematic(5, 4))
