from __future__ import annotations

import cmath
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import setup
from corrspec.cyclotomic import CycInt, recognize_quadratic
from corrspec.ffield import FieldError, build_field
from corrspec.seqgen import (ParamError, correlation_histograms, cross_correlation_direct,
                             decimated_sequence, direct_sweep, direct_sweep_float, export_sequence,
                             least_period, m_sequence, read_sequence, validate_params)


def test_parameter_examples():
    p = validate_params(5, 1, 1)
    assert (p.n, p.d, p.period, p.gcd_dn) == (2, 3, 24, 3)
    p = validate_params(5, 3, 1)
    assert (p.d, p.gcd_dn) == (1323, 63)
    assert validate_params(5, 3, 3).d == 63
    assert validate_params(13, 1, 1).d == 7


@pytest.mark.parametrize("bad,msg", [((7, 1, 1), "mod 4"), ((9, 1, 1), "prime"),
                                     ((5, 2, 1), "odd"), ((5, 3, 2), "divisor")])
def test_parameter_rejections(bad, msg):
    with pytest.raises(ParamError, match=msg):
        validate_params(*bad)


@pytest.mark.parametrize("p", [5, 13, 17, 29, 37, 41])
@pytest.mark.parametrize("m,e", [(1, 1), (3, 1), (3, 3), (5, 1), (5, 5)])
def test_parameter_arithmetic_holds_on_a_grid(p, m, e):
    params = validate_params(p, m, e)
    assert params.d % 2 == 1
    assert (params.d * (p ** (m + e) + 1) - (params.pm + 1)) % params.period == 0


@pytest.mark.parametrize("pme", [(5, 1, 1), (13, 1, 1), (5, 3, 1)])
def test_m_sequence_obeys_the_modulus_recurrence(pme):
    params, F = setup(*pme)
    s = m_sequence(params, F)
    c, n, p = F.modulus, F.n, F.p
    # alpha^n = -sum c_i alpha^i, and trace is linear
    ext = np.concatenate([s, s[:n]])
    rec = -sum(int(c[i]) * ext[i:i + len(s)] for i in range(n)) % p
    assert np.array_equal(rec, ext[n:n + len(s)])


def test_m_sequence_balance_and_period():
    params, F = setup(5, 3, 1)
    s = m_sequence(params, F)
    counts = np.bincount(s, minlength=5)
    assert counts[0] == 5**5 - 1 and set(counts[1:]) == {5**5}
    assert least_period(s) == params.period


def test_decimation_periods():
    params, F = setup(5, 1, 1)
    s = m_sequence(params, F)
    assert least_period(decimated_sequence(s, params.d)) == 8
    params, F = setup(5, 3, 1)
    s = m_sequence(params, F)
    assert least_period(decimated_sequence(s, params.d)) == 248
    assert np.array_equal(decimated_sequence(s, 1), s)


def _naive_correlation(s, sd, p, tau):
    N = len(s)
    exps = [int(s[(t + tau) % N] - sd[t]) for t in range(N)]
    coeffs = [0] * p
    for x in exps:
        coeffs[x % p] += 1
    return CycInt.from_unreduced(p, coeffs)


def test_histograms_match_naive_loop():
    params, F = setup(13, 1, 1)
    s = m_sequence(params, F)
    sd = decimated_sequence(s, params.d)
    hist = correlation_histograms(s, sd, 13, range(0, 168, 11))
    for row, tau in zip(hist, range(0, 168, 11)):
        assert CycInt.from_counts(row) == _naive_correlation(s, sd, 13, tau)


def test_five_one_one_spectrum_by_definition():
    params, F = setup(5, 1, 1)
    vals = Counter(str(recognize_quadratic(v)) for v in direct_sweep(params, F))
    assert vals == {"-1": 6, "4": 6, "-6": 6, "3/2+5/2*sqrt(5)": 3, "3/2-5/2*sqrt(5)": 3}


def test_identity_decimation_gives_autocorrelation():
    params, F = setup(5, 1, 1)
    vals = direct_sweep(params, F, d=1)
    assert vals[0] == CycInt.from_int(5, 24)
    assert all(v == CycInt.from_int(5, -1) for v in vals[1:])


@pytest.mark.parametrize("pme", [(5, 1, 1), (13, 1, 1)])
def test_correlations_are_real(pme):
    params, F = setup(*pme)
    assert all(v.is_real() for v in direct_sweep(params, F))


def test_sum_over_shifts_identity():
    # sum over all c of C(-1, c) = p^(2m), where C(-1, alpha^tau) = C_d(tau) + 1
    for pme in [(5, 1, 1), (13, 1, 1)]:
        params, F = setup(*pme)
        total = sum(recognize_quadratic(v).u + 1 for v in direct_sweep(params, F))
        total += (params.pm - 1) * params.pm // 2
        assert total == params.p ** (2 * params.m)


def test_threads_do_not_change_results():
    params, F = setup(13, 1, 1)
    assert direct_sweep(params, F, threads=3) == direct_sweep(params, F)


def test_float_sweep_matches_exact():
    params, F = setup(13, 1, 1)
    exact = direct_sweep(params, F)
    floats = direct_sweep_float(params, F)
    w = cmath.exp(2j * cmath.pi / 13)
    for x, z in zip(exact, floats):
        assert abs(sum(c * w**k for k, c in enumerate(x.coeffs)) - z) < 1e-9


def test_shift_range_and_field_mismatch():
    params, F = setup(5, 1, 1)
    with pytest.raises(ParamError):
        cross_correlation_direct(params, F, 24)
    with pytest.raises(FieldError):
        m_sequence(params, build_field(13, 2))


def test_export_round_trip():
    params, F = setup(5, 1, 1)
    s = m_sequence(params, F)
    text = export_sequence(params, s)
    assert text.splitlines()[0] == "# p=5 m=1 e=1 n=2 d=3 period=24"
    header, back = read_sequence(text)
    assert header["d"] == 3 and np.array_equal(back, s)


_SWEEP_13 = direct_sweep(*setup(13, 1, 1))


@given(st.integers(0, 167))
def test_single_shift_matches_sweep(tau):
    params, F = setup(13, 1, 1)
    assert cross_correlation_direct(params, F, tau) == _SWEEP_13[tau]
