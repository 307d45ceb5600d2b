from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corrspec.cyclotomic import (CycInt, CyclotomicError, NotQuadraticError, QuadValue, cyc_arith,
                                 omega_pow, recognize_quadratic, sqrt_p_element, to_complex)
from corrspec.spectrum import class_values
from corrspec.seqgen import validate_params


def _numeric(x: CycInt) -> complex:
    w = cmath.exp(2j * cmath.pi / x.p)
    return sum(c * w**k for k, c in enumerate(x.coeffs))


def test_omega_powers_reduce_via_cyclotomic_relation():
    assert omega_pow(5, 0) == CycInt(5, (1, 0, 0, 0))
    assert omega_pow(5, 2) == CycInt(5, (0, 0, 1, 0))
    assert omega_pow(5, 4) == CycInt(5, (-1, -1, -1, -1))
    with pytest.raises(CyclotomicError):
        omega_pow(5, 9)
    assert omega_pow(5, 2) * omega_pow(5, 3) == CycInt.from_int(5, 1)


def test_gauss_sum_coefficients_and_square():
    g = sqrt_p_element(5)
    assert g.coeffs == (-1, 0, -2, -2)
    assert g * g == CycInt.from_int(5, 5)
    g13 = sqrt_p_element(13)
    assert g13 * g13 == CycInt.from_int(13, 13)
    assert abs(_numeric(g13) - 13**0.5) < 1e-12
    with pytest.raises(CyclotomicError):
        sqrt_p_element(7)


def test_recognize_known_values():
    g = sqrt_p_element(5)
    assert recognize_quadratic(g) == QuadValue.of(5, 0, 1)
    assert recognize_quadratic(CycInt.from_int(5, -6)) == QuadValue.of(5, -6)
    # (1 + sqrt 5) / 2 is the golden ratio, an algebraic integer
    phi = (CycInt.from_int(5, 1) + g).half()
    assert recognize_quadratic(phi) == QuadValue.of(5, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(NotQuadraticError):
        recognize_quadratic(omega_pow(5, 1))


def test_to_complex_values():
    phi_bar = (CycInt.from_int(5, 1) - sqrt_p_element(5)).half() * -1
    assert abs(to_complex(phi_bar) - 0.6180339887498949) < 1e-12
    assert abs(to_complex(sqrt_p_element(5), 200) - 5**0.5) < 1e-15
    with pytest.raises(CyclotomicError):
        to_complex(phi_bar, 32)


def test_half_requires_even_coefficients():
    with pytest.raises(CyclotomicError):
        CycInt.from_int(5, 1).half()


def test_conjugation_and_realness():
    w = omega_pow(5, 1)
    assert w.conjugate() == omega_pow(5, 4)
    assert not w.is_real()
    assert (w + w.conjugate()).is_real()
    assert sqrt_p_element(5).is_real()


def test_dispatch():
    w = omega_pow(13, 3)
    assert cyc_arith(w, w, "mul") == omega_pow(13, 6)
    assert cyc_arith(w, w, "sub").is_zero()
    assert cyc_arith(w, None, "neg") == -w


@pytest.mark.parametrize("pme", [(5, 1, 1), (13, 1, 1), (5, 3, 1), (5, 3, 3)])
def test_class_values_round_trip_through_cyclotomic_integers(pme):
    for v in class_values(validate_params(*pme)).values():
        x = v.to_cycint()
        assert recognize_quadratic(x) == v
        assert abs(to_complex(x) - float(v)) <= 1e-9 * max(1.0, abs(float(v)))


def test_quad_value_arithmetic_and_str():
    x = QuadValue.of(5, Fraction(3, 2), Fraction(5, 2))
    assert str(x) == "3/2+5/2*sqrt(5)"
    assert x * x == QuadValue.of(5, Fraction(9, 4) + 5 * Fraction(25, 4), Fraction(15, 2))
    assert x - x == QuadValue.of(5)
    with pytest.raises(CyclotomicError):
        QuadValue.of(5, Fraction(1, 3)).to_cycint()


cyc13 = st.lists(st.integers(-20, 20), min_size=12, max_size=12).map(lambda c: CycInt(13, tuple(c)))


@given(cyc13, cyc13)
def test_arithmetic_matches_complex_evaluation(x, y):
    assert abs(_numeric(x * y) - _numeric(x) * _numeric(y)) < 1e-7 * (1 + abs(_numeric(x) * _numeric(y)))
    assert abs(_numeric(x + y) - _numeric(x) - _numeric(y)) < 1e-9


@given(cyc13, cyc13, cyc13)
def test_ring_laws(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_recognize_inverts_construction(u2, v2):
    if (u2 - v2) % 2:
        v2 += 1  # u and v halves must share parity to lie in Z[w]
    q = QuadValue.of(13, Fraction(u2, 2), Fraction(v2, 2))
    assert recognize_quadratic(q.to_cycint()) == q
