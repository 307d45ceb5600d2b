from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from conftest import setup
from corrspec.cyclotomic import CycInt, QuadValue, recognize_quadratic, sqrt_p_element
from corrspec.ffield import legendre
from corrspec.qform import (LogArith, QFormError, analyze, eval_qform, exp_sum, exp_sum_exact,
                            trinomial_root_census, g_upsilon_root_count, gauss_sum_audit, gram_matrix,
                            kernel_roots, kernel_size, kernel_size_exhaustive, single_root_power_condition,
                            log_rank, rank_and_sign, rank_from_kernel)


def _brute_gauss(A, p):
    """sum over x in F_p^n of w^(x^T A x), exactly."""
    A = np.asarray(A) % p
    n = len(A)
    pts = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)
    q = np.einsum("ki,ij,kj->k", pts, A, pts) % p
    return recognize_quadratic(CycInt.from_counts(np.bincount(q, minlength=p)))


def _diag_formula(rank, sign, n, p):
    """eta(Delta) p^(n - r/2) for p = 1 (mod 4)."""
    g = QuadValue.of(p, 0, 1)
    return g**rank * p ** (n - rank) * sign


def test_rank_and_sign_examples():
    assert rank_and_sign([[3, 1], [1, 1]], 5) == (2, -1)
    assert rank_and_sign(np.zeros((3, 3), dtype=int), 5) == (0, 1)
    assert rank_and_sign(np.eye(4, dtype=int), 13) == (4, 1)
    # zero diagonal with an off-diagonal entry needs the x_r -> x_r + x_c step
    assert rank_and_sign([[0, 1], [1, 0]], 5) == (2, legendre(-1, 5))


sym_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(0, 4), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2)
    .map(lambda vals: _sym(n, vals)))


def _sym(n, vals):
    A = np.zeros((n, n), dtype=np.int64)
    it = iter(vals)
    for i in range(n):
        for j in range(i, n):
            A[i, j] = A[j, i] = next(it)
    return A


@given(sym_matrices)
def test_rank_matches_sympy_and_sign_matches_brute_force_sum(A):
    p, n = 5, len(A)
    r, s = rank_and_sign(A, p)
    assert r == DomainMatrix([[GF(p)(int(v)) for v in row] for row in A], (n, n), GF(p)).rank()
    assert _brute_gauss(A, p) == _diag_formula(r, s, n, p)


def test_form_example_and_gram_matrix():
    params, F = setup(5, 1, 1)
    a, b = -F.one, F.zero
    for x in F.elements():
        x0, x1 = x.coords
        assert eval_qform(a, b, x, params) == (3 * x0 * x0 + 2 * x0 * x1 + x1 * x1) % 5
    assert gram_matrix(a, b, params).tolist() == [[3, 1], [1, 1]]


@pytest.mark.parametrize("pme", [(5, 1, 1), (5, 3, 1)])
def test_gram_matrix_reproduces_the_form(pme):
    params, F = setup(*pme)
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b = F.from_index(int(rng.integers(F.size))), F.from_index(int(rng.integers(F.size)))
        A = gram_matrix(a, b, params)
        for _ in range(10):
            x = np.asarray(F.elem(rng.integers(0, 5, F.n)).coords)
            assert int(x @ A @ x) % 5 == eval_qform(a, b, F.elem(x), params)


@given(st.integers(0, 624), st.integers(0, 624), st.integers(0, 624), st.integers(1, 4))
def test_form_is_homogeneous_of_degree_two(ia, ib, ix, c):
    params, F = setup(5, 1, 1)
    a, b, x = F.from_index(ia), F.from_index(ib), F.from_index(ix % F.size)
    assert eval_qform(a, b, F.scalar(c) * x, params) == c * c * eval_qform(a, b, x, params) % 5


def test_boundary_value_e_minus_one_zero():
    params, F = setup(5, 1, 1)
    assert exp_sum(-F.one, F.zero, params) == QuadValue.of(5, -5)
    assert exp_sum(-F.one, F.zero, params, "rank_sign") == QuadValue.of(5, -5)


def test_twisted_form_has_full_rank_and_eta_sign():
    params, F = setup(5, 1, 1)
    a = -F.alpha_pow(params.d)
    for tau in range(F.order):
        c = F.alpha_pow(tau)
        res = analyze(a, c * F.generator, params)
        assert res.rank == params.n
        assert res.sum_value == QuadValue.of(5, 5 if tau % 2 == 0 else -5)


@pytest.mark.parametrize("pme", [(5, 1, 1), (13, 1, 1), (5, 3, 1), (5, 3, 3)])
def test_kernel_solver_matches_exhaustive_roots(pme):
    params, F = setup(*pme)
    rng = np.random.default_rng(11)
    for _ in range(20):
        a, b = F.alpha_pow(int(rng.integers(F.order))), F.alpha_pow(int(rng.integers(F.order)))
        assert kernel_size(a, b, params) == kernel_size_exhaustive(a, b, params)
    # shifts with a large radical
    for tau in (0, 1, 2):
        b = F.alpha_pow(tau)
        assert kernel_size(-F.one, b, params) == kernel_size_exhaustive(-F.one, b, params)


def test_kernel_equals_radical_of_the_bilinear_form():
    params, F = setup(5, 1, 1)
    for tau in range(F.order):
        b = F.alpha_pow(tau)
        A = gram_matrix(-F.one, b, params)
        radical = {y.index for y in F.elements() if not (A @ np.asarray(y.coords) % 5).any()}
        assert radical == {y.index for y in kernel_roots(-F.one, b, params)}


@pytest.mark.parametrize("pme", [(5, 3, 1), (5, 3, 3)])
def test_kernel_is_a_subfield_vector_space(pme):
    params, F = setup(*pme)
    sub = [F.zero] + [F.subfield_generator(params.e) ** k for k in range(params.pe - 1)]
    for tau in range(0, 200):
        roots = kernel_roots(-F.one, F.alpha_pow(tau), params)
        if len(roots) == 1:
            continue
        idx = {r.index for r in roots}
        for x, y in itertools.product(roots[:6], repeat=2):
            assert (x + y).index in idx
        for x, lam in itertools.product(roots[:6], sub):
            assert (lam * x).index in idx


def test_rank_from_kernel():
    params, _ = setup(5, 3, 1)
    assert [rank_from_kernel(s, params) for s in (1, 5, 25)] == [6, 5, 4]
    with pytest.raises(QFormError):
        rank_from_kernel(10, params)


def test_both_zero_rejected():
    params, F = setup(5, 1, 1)
    with pytest.raises(QFormError):
        kernel_size(F.zero, F.zero, params)


def test_exact_sum_of_zero_form():
    params, F = setup(5, 1, 1)
    assert exp_sum_exact(F.zero, F.zero, params) == CycInt.from_int(5, 25)


@pytest.mark.parametrize("pme", [(5, 1, 1), (13, 1, 1)])
def test_gauss_sum_audit(pme):
    params, F = setup(*pme)
    audits = gauss_sum_audit(params, F)
    assert all(a.passed for a in audits)
    assert audits[0].observed == str(-params.pm)


def test_gauss_sum_sign_examples():
    params, F = setup(5, 1, 1)
    tr = F.trace_of_power
    twist = lambda la: recognize_quadratic(CycInt.from_counts(  # noqa: E731
        np.bincount(np.append(tr[(la + 2 * np.arange(24)) % 24], 0), minlength=5)))
    assert twist(0) == QuadValue.of(5, -5)
    assert twist(1) == QuadValue.of(5, 5)
    assert sqrt_p_element(5) * sqrt_p_element(5) == CycInt.from_int(5, 5)


def test_log_arith_matches_field_arithmetic():
    _, F = setup(13, 1, 1)
    ar = LogArith(F)
    rng = np.random.default_rng(5)
    for _ in range(200):
        x, y = F.from_index(int(rng.integers(F.size))), F.from_index(int(rng.integers(F.size)))
        assert ar.add(ar.log(x), ar.log(y)) == ar.log(x + y)
        assert ar.mul(ar.log(x), ar.log(y)) == ar.log(x * y)
        assert ar.neg(ar.log(x)) == ar.log(-x)
        assert ar.frob(ar.log(x), 1) == ar.log(x.frobenius())


def test_log_rank():
    _, F = setup(5, 1, 1)
    ar = LogArith(F)
    one, two = ar.log(F.one), ar.log(F.scalar(2))
    assert log_rank([[one, two], [two, ar.log(F.scalar(4))]], ar) == 1
    assert log_rank([[one, -1], [-1, one]], ar) == 2


def test_trinomial_counts_by_evaluation():
    params, F = setup(5, 1, 1)
    census = trinomial_root_census(params, F)
    direct = [g_upsilon_root_count(F.alpha_pow(k), params) for k in range(F.order)]
    assert census.tolist() == direct
    assert set(direct) <= {0, 1, 2, 6}
    assert direct.count(1) == 5


def test_single_root_power_condition():
    for pme in [(5, 1, 1), (13, 1, 1)]:
        params, F = setup(*pme)
        census = trinomial_root_census(params, F)
        for k in np.flatnonzero(census == 1):
            _, (z0,) = g_upsilon_root_count(F.alpha_pow(int(k)), params, return_roots=True)
            assert single_root_power_condition(z0, params)


def test_trinomial_root_census_sample_large_field():
    params, F = setup(5, 3, 3)
    census = trinomial_root_census(params, F)
    for k in range(0, F.order, 1301):
        assert census[k] == g_upsilon_root_count(F.alpha_pow(k), params)
    assert int((census == 1).sum()) == 125
