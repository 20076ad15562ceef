import random

import pytest
from hypothesis import given, settings, strategies as st

from pervlab.betacombinat import BetaSet, Partition, Symbol, d_cocore, d_core, partition_of_beta, symbol_core
from pervlab.cyclopoly import ScaledCycloProduct, parse_product, primitive_root
from pervlab.perversity import (
    NonIntegralPi,
    check_d12_shortcut,
    check_integrality,
    check_parity,
    gl_branch,
    gu_branches,
    is_principal,
    pi,
    pi_closed_gl,
    pi_closed_gu,
    pi_closed_symbol,
    pi_of_degrees,
    symbol_branches,
    tau1_bound,
)
from pervlab.unideg import BlockSpec, UniChar, block_characters, degree, e_from_d, symbol_family, valid_d


def test_pi_examples():
    assert pi_of_degrees(3, parse_product("(1/2) q P2^2 P6"), parse_product("1")) == 3
    assert pi_of_degrees("8a", parse_product("q^2 P12 P24"), parse_product("1")) == 10
    assert pi_of_degrees(5, parse_product("1"), parse_product("1")) == 0


def test_non_integral_pi_raises():
    with pytest.raises(NonIntegralPi):
        pi_of_degrees(3, parse_product("P1"), parse_product("1"))


def test_gu3_d6():
    (b,) = block_characters("GU", 3, 6)
    assert [pi(b, c) for c in b.characters] == [0, 1, 1]
    _, sig, tau = gu_branches(Partition(()), 6)
    assert (len(sig.positions), len(tau.positions)) == (2, 1)
    assert sig.positions == (2, 0) and tau.positions == (1,)


def test_gl2_d2():
    (b,) = block_characters("GL", 2, 2)
    (ch,) = [c for c in b.characters if str(c) == "[1,1]"]
    assert pi(b, ch) == 1
    # q at -1 is -1, sign (-1)^1
    assert ch.degree.evaluate(primitive_root(2)).real == pytest.approx(-1)
    assert check_parity(b).ok
    assert check_d12_shortcut(b).ok


def test_shortcut_rejects_other_d():
    (b,) = block_characters("GU", 3, 6)
    with pytest.raises(ValueError):
        check_d12_shortcut(b)


@pytest.mark.parametrize("d", range(1, 8))
def test_gl_principal_runs_up_by_one(d):
    assert [pi_closed_gl(Partition(()), d, j) for j in range(1, d + 1)] == list(range(d))
    (b,) = [b for b in block_characters("GL", d, d) if is_principal(b)]
    assert sorted(pi(b, c) for c in b.characters) == list(range(d))


def test_principal_detection():
    blocks = block_characters("GL", 4, 2)
    assert sum(is_principal(b) for b in blocks) == 1


def test_integrality_small_sweep():
    for fam, n in (("GL", 6), ("GU", 6), ("BC", 4), ("Dplus", 4), ("Dminus", 4)):
        for d in valid_d(fam, n):
            for b in block_characters(fam, n, d):
                assert check_integrality(b).ok


class _Flipped(UniChar):
    @property
    def degree(self):
        return super().degree * ScaledCycloProduct.make(-1, 0)


def test_parity_catches_a_wrong_sign():
    (b,) = block_characters("GL", 2, 2)
    assert check_parity(b).ok
    # a negative scalar leaves pi alone but flips the sign at -1
    chars = [_Flipped(c.family, c.label, c.tag) if str(c) == "[1,1]" else c for c in b.characters]
    bad = BlockSpec(b.family, b.n, b.d, b.e, b.core, b.core_degree, chars)
    rep = check_parity(bad)
    assert not rep.ok and len(rep.violations) == 1


def test_gu_helper_counts():
    # GU3, d = 6: the shifted set (2, 1, 0) has e = 3
    assert pi_closed_gu(Partition(()), 6, "sigma", 1) == 0
    assert [pi_closed_gu(Partition(()), 6, "sigma", i) for i in (1, 2)] == [0, 1]
    assert pi_closed_gu(Partition(()), 6, "tau", 1) == 1


# ---------------------------------------------------------------- closed forms vs degrees

def _random_core(rng, d, family):
    top = rng.randint(1, 7)
    xs = BetaSet(tuple(sorted(rng.sample(range(18), top), reverse=True)))
    if family in ("GL", "GU"):
        return partition_of_beta(d_core(xs, e_from_d(family, d)))
    raise AssertionError


@settings(max_examples=60)
@given(st.integers(1, 9), st.integers(0, 10 ** 6))
def test_gl_closed_form_matches_degrees(d, seed):
    core = _random_core(random.Random(seed), d, "GL")
    _, br = gl_branch(core, d)
    psi = degree("GL", core)
    for j, lab in enumerate(br.labels, 1):
        assert pi_closed_gl(core, d, j) == pi_of_degrees(d, degree("GL", lab), psi)


@settings(max_examples=60)
@given(st.integers(1, 12), st.integers(0, 10 ** 6))
def test_gu_closed_form_matches_degrees(d, seed):
    core = _random_core(random.Random(seed), d, "GU")
    _, sig, tau = gu_branches(core, d)
    psi = degree("GU", core)
    for br in (sig, tau):
        vals = []
        for i, lab in enumerate(br.labels, 1):
            v = pi_closed_gu(core, d, br.name, i)
            assert v == pi_of_degrees(d, degree("GU", lab), psi)
            vals.append(v)
        # along an arm, pi climbs toward the exceptional vertex by odd steps
        assert all(b > a and (b - a) % 2 for a, b in zip(vals, vals[1:]))


symbol_st = st.tuples(
    st.sets(st.integers(0, 11), max_size=5), st.sets(st.integers(0, 11), max_size=5)
).filter(lambda p: p[0] or p[1]).map(lambda p: Symbol.of(sorted(p[0], reverse=True), sorted(p[1], reverse=True)))


@settings(max_examples=80)
@given(symbol_st, st.integers(1, 10))
def test_symbol_closed_form_matches_degrees(sym, d):
    e = d if d % 2 else d // 2
    core = (symbol_core(sym, e) if d % 2 else d_cocore(sym, e)).normalize()
    if core.degenerate:
        return
    fam = symbol_family(core)
    _, sig, tau = symbol_branches(fam, core, d)
    psi = degree(fam, core)
    for br in (sig, tau):
        vals = []
        for i, lab in enumerate(br.labels, 1):
            v = pi_closed_symbol(fam, core, d, br.name, i)
            assert v == pi_of_degrees(d, degree(symbol_family(lab), lab), psi)
            vals.append(v)
        assert all(b > a for a, b in zip(vals, vals[1:]))
        if d % 2 == 0:
            assert all((b - a) % 2 for a, b in zip(vals, vals[1:]))


@settings(max_examples=80)
@given(symbol_st, st.integers(1, 6))
def test_tau1_at_least_twice_the_defect(sym, k):
    d = 2 * k
    core = d_cocore(sym, k).normalize()
    if core.degenerate:
        return
    got = tau1_bound(symbol_family(core), core, d)
    if got is not None:
        value, bound = got
        assert value >= bound


def test_tau1_needs_even_d():
    with pytest.raises(ValueError):
        tau1_bound("BC", Symbol.of([1, 0], [0]), 3)
