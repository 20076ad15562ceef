import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pervlab.betacombinat import Partition, partitions, symbols
from pervlab.cyclopoly import divisors, parse_product
from pervlab.unideg import (
    FamilyError,
    block_characters,
    degree,
    degree_bc,
    degree_dplus,
    degree_gl,
    degree_gu,
    e_from_d,
    group_order,
    labels,
    symbol_family,
)


def _mobius(n):
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def exact_value(f, q):
    """Exact rational value of a plain product at an integer q."""
    v = Fraction(f.scalar.a) if hasattr(f.scalar, "a") else Fraction(f.scalar)
    v *= Fraction(q) ** f.qexp
    for fac, m in f.factors:
        phi = Fraction(1)
        for k in divisors(fac.r):
            phi *= Fraction(q ** k - 1) ** _mobius(fac.r // k)
        v *= phi ** m
    return v


def hook_formula(lam, q):
    """q^{n(lam)} prod_{i<=n}(q^i - 1) / prod_hooks (q^h - 1)."""
    parts = lam.parts
    conj = lam.conjugate().parts
    n = sum(parts)
    nl = sum(i * p for i, p in enumerate(parts))
    num = Fraction(q) ** nl
    for i in range(1, n + 1):
        num *= q ** i - 1
    for i, p in enumerate(parts):
        for j in range(p):
            num /= q ** (p - j + conj[j] - i - 1) - 1
    return num


def test_e_from_d():
    assert e_from_d("GU", 6) == 3
    assert e_from_d("GU", 5) == 10
    assert e_from_d("GU", 4) == 4
    assert e_from_d("BC", 8) == 4
    assert e_from_d("Dminus", 7) == 7
    with pytest.raises(FamilyError):
        e_from_d("E8", 3)


def test_gl_degree_examples():
    assert degree_gl(Partition((4,))) == parse_product("1")
    assert degree_gl(Partition((1, 1))) == parse_product("q")
    assert degree_gl(Partition((2, 1))) == parse_product("q P2")


def test_gu_degree_examples():
    assert degree_gu(Partition((1, 1))) == parse_product("q")
    assert degree_gu(Partition((2, 1))) == parse_product("q P1")
    assert degree_gu(Partition((1,) * 5)) == parse_product("q^10")


def test_trivial_characters_have_degree_one():
    for n in range(1, 6):
        triv_bc = [c for c in labels("BC", n) if degree_bc(c.label) == parse_product("1")]
        assert len(triv_bc) == 1
        triv_d = [c for c in labels("Dplus", n) if not c.tag and degree_dplus(c.label) == parse_product("1")]
        assert len(triv_d) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_gl_degrees_match_hook_formula(n):
    for lam in partitions(n):
        for q in (2, 3):
            assert exact_value(degree_gl(lam), q) == hook_formula(lam, q)


@pytest.mark.parametrize("family", ["BC", "Dplus", "Dminus"])
def test_symbol_degrees_divide_the_group_order(family):
    for n in range(1, 6):
        order = group_order(family, n)
        for ch in labels(family, n):
            deg = ch.degree
            assert (order / deg).is_polynomial
            for q in (2, 3):
                v = exact_value(deg, q)
                assert v.denominator == 1 and v > 0
                assert exact_value(order, q) % v == 0


def test_unipotent_counts():
    # numbers of unipotent characters of Sp4, Sp6, SO8+, SO8-
    assert len(labels("BC", 2)) == 6
    assert len(labels("BC", 3)) == 12
    assert len(labels("Dplus", 4)) == 14
    assert len(labels("Dminus", 4)) == 10


def test_degenerate_pair_share_degree():
    pair = [c for c in labels("Dplus", 2) if c.tag]
    assert len(pair) == 2 and pair[0].degree == pair[1].degree


def test_blocks_examples():
    (b,) = block_characters("GL", 2, 2)
    assert len(b.characters) == 2
    (b,) = block_characters("GU", 3, 6)
    assert sorted(str(c) for c in b.characters) == ["[1,1,1]", "[2,1]", "[3]"]
    # (2,1) is a 2-core, so it sits alone
    blocks = block_characters("GL", 3, 2)
    assert sorted(len(b.characters) for b in blocks) == [1, 2]
    alone = next(b for b in blocks if len(b.characters) == 1)
    assert str(alone.core) == "[2,1]"


@settings(max_examples=30)
@given(st.sampled_from(["GL", "GU", "BC", "Dplus", "Dminus"]), st.integers(1, 6), st.data())
def test_blocks_partition_the_characters(family, n, data):
    from pervlab.unideg import valid_d

    d = data.draw(st.sampled_from(valid_d(family, n)))
    blocks = block_characters(family, n, d)
    seen = [c for b in blocks for c in b.characters]
    assert sorted(map(str, seen)) == sorted(str(c) for c in labels(family, n))
    for b in blocks:
        assert b.weight >= 0


def test_symbol_family_by_defect():
    for sym in symbols(3, range(0, 9)):
        fam = symbol_family(sym)
        assert fam == ("BC" if sym.defect % 2 else "Dplus" if sym.defect % 4 == 0 else "Dminus")


def test_degree_rejects_wrong_defect():
    sym = next(iter(symbols(2, [1])))
    with pytest.raises(FamilyError):
        degree("Dplus", sym)
