from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steiner_hyper.formats import (
    dump_hypermatrix,
    format_tree,
    json_record,
    load_hypermatrix,
    parse_prufer,
    parse_tree,
    read_tree,
)
from steiner_hyper.hyperform import steiner_hypermatrix
from steiner_hyper.tree import TreeError, prufer_encode, random_tree


def test_parse_with_comments():
    t = parse_tree("# a path\n1 2\n\n2 3  # middle\n")
    assert t.n == 3 and sorted(map(sorted, t.edges)) == [[1, 2], [2, 3]]


def test_single_vertex():
    t = parse_tree("1\n")
    assert t.n == 1 and format_tree(t) == "1\n"


@pytest.mark.parametrize("text, fragment", [("1 2 3\n", "expected"), ("1 x\n", "non-integer"), ("1 2\n1 2\n", "repeated")])
def test_bad_tree_text(text, fragment):
    with pytest.raises(TreeError, match=fragment):
        parse_tree(text)


@given(st.integers(1, 12), st.integers(0, 10**6))
def test_tree_roundtrip(n, seed):
    t = random_tree(n, seed)
    back = parse_tree(format_tree(t))
    assert back.n == t.n and sorted(map(sorted, back.edges)) == sorted(map(sorted, t.edges))


def test_prufer_text():
    t = parse_prufer("4, 4 2")
    assert t.n == 5 and tuple(prufer_encode(t)) == (4, 4, 2)


def test_read_tree(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("1 2\n1 3\n")
    assert read_tree(p).n == 3


@pytest.mark.parametrize("n, k", [(3, 2), (4, 3), (2, 5)])
def test_hypermatrix_roundtrip(n, k):
    m = steiner_hypermatrix(random_tree(n, k), k)
    text = dump_hypermatrix(m)
    assert text.splitlines()[0] == f"{k} {n}"
    assert load_hypermatrix(text) == m


def test_load_errors():
    with pytest.raises(ValueError, match="header"):
        load_hypermatrix("2")
    with pytest.raises(ValueError, match="entries"):
        load_hypermatrix("2 2\n0 1 1\n")
    with pytest.raises(ValueError):
        load_hypermatrix("2 2\n0 1 2 0\n")
    arr = load_hypermatrix("2 2\n0 1 2 0\n", symmetric=False)
    assert arr[1, 0] == 2


def test_json_record_is_canonical():
    rec = {"b": Fraction(1, 3), "a": np.int64(2), "c": [Fraction(2), (1, 2)]}
    text = json_record(rec)
    assert text == '{"a":2,"b":"1/3","c":["2/1",[1,2]]}'
    assert json_record(dict(reversed(list(rec.items())))) == text
