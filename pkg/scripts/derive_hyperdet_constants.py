"""Recompute the hyperdeterminant regression constants frozen in the tests.

Each value is computed for several labeled trees; the script stops if the
trees disagree, so a printed value is tree-independent by construction.
The n=2 values are also recomputed through the generic Macaulay path.

    python scripts/derive_hyperdet_constants.py
"""

from __future__ import annotations

import itertools

from steiner_hyper.closed_forms import near_diagonal_target
from steiner_hyper.hyperform import steiner_hypermatrix
from steiner_hyper.resultant import gradient_system, hyperdet, macaulay_resultant
from steiner_hyper.tree import all_labeled_trees, build_tree, path_tree, random_tree, star_tree


def common_value(n: int, k: int, trees) -> int:
    values = {hyperdet(steiner_hypermatrix(t, k)) for t in trees}
    if len(values) != 1:
        raise SystemExit(f"(n={n}, k={k}) depends on the tree: {values}")
    return values.pop()


def main() -> None:
    k2 = build_tree([(1, 2)])
    print("n=2 (Sylvester, cross-checked by Macaulay):")
    for k in range(2, 14):
        m = steiner_hypermatrix(k2, k)
        v = hyperdet(m)
        assert v == macaulay_resultant(gradient_system(m)), k
        print(f"  k={k}: {v}")
    print("n=3 (all 3 labeled trees):")
    for k in range(2, 6):
        print(f"  k={k}: {common_value(3, k, list(all_labeled_trees(3)))}")
    trees = [path_tree(4), star_tree(4), random_tree(4, 1), random_tree(4, 2), star_tree(4, center=1)]
    v = common_value(4, 4, trees)
    assert v == hyperdet(near_diagonal_target(4, 4))
    print(f"n=4, k=4 ({len(trees)} trees, equal to the target hypermatrix): {v}")


if __name__ == "__main__":
    main()
