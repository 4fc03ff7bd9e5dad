from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steiner_hyper.bases import reflection_matrix
from steiner_hyper.closed_forms import cnd_witness_search
from steiner_hyper.hyperform import eval_multilinear, identity_hypermatrix, steiner_hypermatrix
from steiner_hyper.linalg import as_rational_array, det, matmul
from steiner_hyper.resultant import hyperdet
from steiner_hyper.spectra import (
    c1_form,
    c3_form,
    definite_check_k2,
    h_eigen_search,
    k2_closed_eigenvalues,
    k2_sign_census,
    quartic_positivity_check,
    reflected_form,
    shifted_power_run,
)
from steiner_hyper.tree import build_tree, path_tree, random_tree, star_tree

F = Fraction
K2 = build_tree([(1, 2)])


class TestK2Closed:
    def test_matrix_case(self):
        lams = k2_closed_eigenvalues(2)
        assert [round(x.real, 12) for x in lams] == [1.0, -1.0]
        assert sorted(np.linalg.eigvalsh([[0.0, 1.0], [1.0, 0.0]])) == [-1.0, 1.0]

    @pytest.mark.parametrize("k", range(2, 13))
    def test_lambda0(self, k):
        lams = k2_closed_eigenvalues(k)
        assert len(lams) == 2 * (k - 1)
        assert abs(lams[0] - (2 ** (k - 1) - 1)) <= 1e-9 * 2 ** (k - 1)
        assert lams[k - 1 :] == [complex(-1.0)] * (k - 1)

    def test_odd_k_midpoint(self):
        # for odd k the index (k-1)/2 exists and gives -1
        for k in (3, 5, 7, 9):
            assert abs(k2_closed_eigenvalues(k)[(k - 1) // 2] + 1) < 1e-9

    def test_census_examples(self):
        c = k2_sign_census(2)
        assert (c.positive, c.negative, c.sign) == (1, 1, -1)
        assert k2_sign_census(4).sign == -1
        assert k2_sign_census(7).degenerate and k2_sign_census(7).sign == 0

    @pytest.mark.parametrize("k", range(2, 14))
    def test_census_matches_resultant_sign(self, k):
        res = hyperdet(steiner_hypermatrix(K2, k))
        c = k2_sign_census(k)
        sgn = (res > 0) - (res < 0)
        assert c.sign == sgn
        if k % 6 != 1:
            assert c.positive % 2 == 1 and c.negative % 2 == 1


class TestReflectedForms:
    def test_empty_mask_is_m(self):
        m = steiner_hypermatrix(random_tree(4, 1), 3)
        assert np.array_equal(reflected_form(m, []).realize(), m.entries)

    def test_k2_matrices(self):
        t = random_tree(5, 2)
        m = steiner_hypermatrix(t, 2)
        a = reflection_matrix(5)
        c = reflected_form(m, {1}).realize()
        assert np.array_equal(c, matmul(m.entries, a))
        d = c + reflected_form(m, {0}).realize()
        assert np.array_equal(d, d.T)

    def test_mask_validation(self):
        with pytest.raises(ValueError):
            reflected_form(steiner_hypermatrix(path_tree(3), 2), {2})

    @given(st.integers(0, 1000), st.lists(st.integers(-5, 5), min_size=16, max_size=16))
    def test_lazy_matches_realized(self, seed, raw):
        m = steiner_hypermatrix(random_tree(4, seed), 4)
        xs = [as_rational_array(raw[4 * i : 4 * i + 4]) for i in range(4)]
        for form in (c1_form(m), c3_form(m), reflected_form(m, {0, 2})):
            assert form.evaluate(xs) == eval_multilinear(form.realize(), xs)

    def test_symmetrized_keeps_diagonal(self):
        m = steiner_hypermatrix(path_tree(4), 4)
        form = c1_form(m)
        x = as_rational_array([1, -2, F(1, 3), 4])
        assert eval_multilinear(form.symmetrized(), [x] * 4) == form.evaluate([x] * 4)


class TestDefinite:
    def test_path3(self):
        r = definite_check_k2(path_tree(3))
        assert r.d_positive_definite and r.det_m == 4 and r.derived_sign == 1 and r.sign_ok

    def test_k2(self):
        r = definite_check_k2(K2)
        assert r.derived_sign == -1 and r.det_m == -1

    @pytest.mark.parametrize("seed", range(20))
    def test_random(self, seed):
        t = random_tree(2 + seed % 8, seed)
        r = definite_check_k2(t)
        assert r.d_positive_definite and r.sign_ok
        assert r.det_a == (-1) ** (t.n - 1) == det(reflection_matrix(t.n))


class TestQuartic:
    def test_all_ones(self):
        t = star_tree(5)
        r = quartic_positivity_check(t, trials=0, seed=0, samples=[[1] * 5])
        assert r.identity_exact and r.values[0] == 2 * eval_multilinear(steiner_hypermatrix(t, 4), [[1] * 5] * 4)
        assert r.values[0] > 0

    def test_hyperplane_branch(self):
        t = path_tree(4)
        x = as_rational_array([1, -2, 3, -2])
        r = quartic_positivity_check(t, trials=0, seed=0, samples=[x])
        assert r.values[0] == -2 * eval_multilinear(steiner_hypermatrix(t, 4), [x] * 4) > 0

    def test_star_mixed_samples(self):
        r = quartic_positivity_check(star_tree(5), trials=200, seed=3)
        assert r.identity_exact and r.all_positive


class TestHEigen:
    def test_identity_tensor(self):
        pairs = h_eigen_search(identity_hypermatrix(3, 4), starts=10, seed=0)
        assert pairs and all(abs(p.lam - 1) < 1e-10 for p in pairs)

    def test_odd_order_rejected(self):
        with pytest.raises(ValueError):
            shifted_power_run(np.zeros((2, 2, 2)), np.ones(2))

    def test_residuals_and_normalisation(self):
        a = c1_form(steiner_hypermatrix(path_tree(3), 4)).symmetrized()
        arr = a.to_float()
        for p in h_eigen_search(a, starts=30, seed=1):
            r = np.max(np.abs(np.einsum("ijkl,j,k,l->i", arr, p.x, p.x, p.x) - p.lam * p.x**3))
            assert r < 1e-10 and p.residual < 1e-10
            assert abs(np.sum(p.x**4) - 1) < 1e-9

    def test_m_itself_has_negative_eigenvalue(self):
        t = path_tree(3)
        pairs = h_eigen_search(steiner_hypermatrix(t, 4), starts=20, seed=0)
        assert min(p.lam for p in pairs) < 0
        # a CND witness direction already gives a negative Rayleigh value
        c = cnd_witness_search(t, 4, trials=1, seed=0).witnesses[0]
        run = shifted_power_run(-steiner_hypermatrix(t, 4).to_float(), np.array([float(v) for v in c]))
        assert run.converged and -run.pair.lam < 0

    def test_c1_path4_positive(self):
        pairs = h_eigen_search(c1_form(steiner_hypermatrix(path_tree(4), 4)).symmetrized(), starts=40, seed=2)
        assert pairs and min(p.lam for p in pairs) > 0

    @pytest.mark.parametrize("seed", range(5))
    def test_monotone_objective(self, seed):
        arr = c1_form(steiner_hypermatrix(random_tree(4, seed), 4)).symmetrized().to_float()
        run = shifted_power_run(-arr, np.random.default_rng(seed).standard_normal(4))
        hist = np.array(run.history)
        assert np.all(np.diff(hist) >= -1e-12 * np.sum(np.abs(arr)))

    def test_deterministic(self):
        a = c1_form(steiner_hypermatrix(star_tree(4), 4)).symmetrized()
        first = h_eigen_search(a, starts=10, seed=5)
        second = h_eigen_search(a, starts=10, seed=5)
        assert [p.lam for p in first] == [p.lam for p in second]
