"""Steiner distance hypermatrices of trees: exact forms, resultants and spectra."""

from .closed_forms import (
    cnd_witness_search,
    diagonal_form_even,
    edge_sum_form,
    near_diagonal_check,
    near_diagonal_entrywise,
    near_diagonal_target,
    odd_k_vanishing,
    psd_cone_membership,
    u_hypermatrix,
)
from .hyperform import (
    SymHypermatrix,
    eval_diagonal,
    eval_multilinear,
    identity_hypermatrix,
    mode_transform,
    polarize,
    steiner_hypermatrix,
)
from .resultant import hyperdet, macaulay_resultant, sylvester_resultant
from .spectra import (
    c1_form,
    c3_form,
    definite_check_k2,
    h_eigen_search,
    k2_closed_eigenvalues,
    k2_sign_census,
    quartic_positivity_check,
)
from .tree import Tree, TreeError, all_labeled_trees, build_tree, path_tree, random_tree, star_tree, steiner_distance

__all__ = [
    "Tree",
    "TreeError",
    "build_tree",
    "path_tree",
    "star_tree",
    "random_tree",
    "all_labeled_trees",
    "steiner_distance",
    "SymHypermatrix",
    "steiner_hypermatrix",
    "identity_hypermatrix",
    "eval_multilinear",
    "eval_diagonal",
    "mode_transform",
    "polarize",
    "edge_sum_form",
    "diagonal_form_even",
    "odd_k_vanishing",
    "cnd_witness_search",
    "psd_cone_membership",
    "u_hypermatrix",
    "near_diagonal_target",
    "near_diagonal_check",
    "near_diagonal_entrywise",
    "hyperdet",
    "sylvester_resultant",
    "macaulay_resultant",
    "k2_closed_eigenvalues",
    "k2_sign_census",
    "c1_form",
    "c3_form",
    "definite_check_k2",
    "h_eigen_search",
    "quartic_positivity_check",
]
