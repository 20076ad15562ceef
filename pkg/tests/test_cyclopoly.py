import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pervlab.cyclopoly import (
    CycloFactor,
    ScaledCycloProduct,
    TwistedFactorError,
    b_d,
    b_twisted,
    b_value,
    euler_phi,
    factor_q_power_difference,
    parse_d,
    parse_product,
    phi_d_totient,
    primitive_root,
    substitute_neg_q,
)

P = parse_product


def test_phi_d_totient_values():
    assert phi_d_totient(1, 3) == Fraction(1, 2)
    assert phi_d_totient(6, 3) == 1
    for r in (5, 7, 9):
        assert phi_d_totient(r, 2) == Fraction(euler_phi(r), 2)


def test_b_d_examples():
    assert b_d(3, P("q P2^2 P6")) == 9
    assert b_d(7, P("1")) == 0
    assert b_d(3, P("P1 P3")) == Fraction(15, 2)


def test_b_d_ignores_scalar():
    assert b_d(3, P("(1/2) q P2^2 P6")) == b_d(3, P("q P2^2 P6"))


def test_b_d_rejects_twisted():
    with pytest.raises(TwistedFactorError):
        b_d(8, P("P8a"))


def test_twisted_examples():
    f = P("q^2 P12 P24a P24b")
    assert b_twisted("8a", f) == 80
    assert b_twisted("8b", f) == 32


def test_twisted_rejects_own_factor():
    with pytest.raises(ValueError):
        b_twisted("8a", P("P8a"))
    with pytest.raises(ValueError):
        b_twisted("8a", P("P8"))


def test_twisted_8a_row():
    row = {"q": 6, "P1": 7, "P2": 3, "P4": 14, "P8b": 14, "P12": 20, "P24a": 20, "P24b": 28}
    assert {k: b_twisted("8a", P(k)) for k in row} == row


def test_twisted_12a_second_factor_counts_its_zero():
    # the root at pi/6 lies in [0, 5 pi / 6]
    assert b_twisted("12a", P("P12b")) == 22


def test_plain_d_on_twisted_factors_counts_the_first_sector():
    assert b_value(4, P("P12a")) == 2
    assert b_value(4, P("P12b")) == 6


def test_factor_q_power_difference():
    assert factor_q_power_difference(3, 0, -1) == P("P1 P3")
    assert factor_q_power_difference(5, 2, 1) == P("q^2 P2 P6")
    assert factor_q_power_difference(4, 4, 1) == ScaledCycloProduct.make(2, 4)
    with pytest.raises(ValueError):
        factor_q_power_difference(4, 4, -1)


def test_substitute_neg_q():
    assert substitute_neg_q(P("q P2")) == P("q P1")
    assert substitute_neg_q(P("q^6")) == P("q^6")
    assert substitute_neg_q(P("P4")) == P("P4")


def test_evaluate_examples():
    z = primitive_root(4)
    v = P("P1").evaluate(z)
    assert abs(v - (1j - 1)) < 1e-12
    assert abs(cmath.phase(v) - 3 * math.pi / 4) < 1e-12
    assert b_d(4, P("P1")) * Fraction(1, 4) == Fraction(3, 4)
    assert P("q^2 P3 P5").evaluate(1).real > 0
    # (q^{rd} - 1)/(q^d - 1) at a primitive d-th root is r
    r, d = 5, 3
    f = factor_q_power_difference(r * d, 0, -1) / factor_q_power_difference(d, 0, -1)
    assert abs(f.evaluate(primitive_root(d)) - r) < 1e-9


def test_parse_roundtrip_and_errors():
    for text in ("(1/3) q P1^2 P2^2", "(1/2 r2) q P1 P2", "P12a", "1", "q^10 P12 P24"):
        assert P(str(P(text))) == P(text)
    with pytest.raises(ValueError):
        parse_d("7a")
    assert parse_d("24b") == (24, "b")


def test_twisted_roots_multiply_back():
    # P8 = P8a P8b at any point
    for z in (0.3 + 0.2j, 2.0, -1.5j):
        assert abs(P("P8a P8b").evaluate(z) - P("P8").evaluate(z)) < 1e-9
        assert abs(P("P24a P24b").evaluate(z) - P("P24").evaluate(z)) < 1e-6


plain = st.builds(
    lambda q, fs, s: ScaledCycloProduct.make(Fraction(s), q, {CycloFactor(r): m for r, m in fs.items()}),
    st.integers(0, 6),
    st.dictionaries(st.integers(1, 40), st.integers(1, 3), max_size=6),
    st.integers(1, 12),
)


@given(plain, plain, st.integers(1, 40))
def test_b_d_is_a_homomorphism(f, g, d):
    assert b_d(d, f * g) == b_d(d, f) + b_d(d, g)
    assert b_d(d, f * g / g) == b_d(d, f)


@given(plain, plain)
def test_b_twisted_is_a_homomorphism(f, g):
    for alpha in ("8a", "8b", "24a"):
        bad = any(fac.r in (8, 24) for fac, _ in (f * g).factors)
        if not bad:
            assert b_twisted(alpha, f * g) == b_twisted(alpha, f) + b_twisted(alpha, g)


@given(plain)
def test_substitute_neg_q_is_an_involution(f):
    assert substitute_neg_q(substitute_neg_q(f)) == f


@given(plain, st.integers(2, 30))
def test_argument_identity(f, d):
    if f.multiplicity(d):
        return
    v = f.evaluate(primitive_root(d))
    want = cmath.exp(1j * math.pi * float(b_d(d, f)) / d)
    assert abs(v / abs(v) - want) < 1e-9
