import pytest
from hypothesis import given, strategies as st

from pervlab.betacombinat import (
    BetaSet,
    CombinatoricsError,
    Partition,
    Symbol,
    add_cohook,
    add_hook,
    beta_of_partition,
    cohookable_positions,
    d_cocore,
    d_core,
    d_weight,
    hookable_positions,
    partition_of_beta,
    partitions,
    remove_cohook,
    remove_hook,
    symbols,
)


def test_beta_of_partition():
    assert beta_of_partition(Partition((1, 1)), 2) == BetaSet((2, 1))
    assert beta_of_partition(Partition((2, 1)), 2) == BetaSet((3, 1))
    empty = beta_of_partition(Partition(()), 3)
    assert empty == BetaSet((2, 1, 0)) and empty.rank == 0


def test_hooks():
    assert partition_of_beta(add_hook(BetaSet((0,)), 0, 3)) == Partition((3,))
    assert remove_hook(BetaSet((3, 1)), 3, 3).equivalent(BetaSet(()))
    with pytest.raises(CombinatoricsError):
        remove_hook(BetaSet((2, 1, 0)), 2, 3)


def test_cores():
    assert d_core(BetaSet((3,)), 3).rank == 0
    assert d_core(BetaSet((3, 1)), 3).rank == 0
    # (2,1) is itself a 2-core
    lam = Partition((2, 1))
    assert partition_of_beta(d_core(beta_of_partition(lam), 2)) == lam


def test_hookable_positions_of_empty():
    y, free = hookable_positions(BetaSet((2, 1, 0)), 3)
    assert free == (2, 1, 0)


def test_cohook_examples():
    assert add_cohook(Symbol.of([1], [0]), "X", 1, 2) == Symbol.of([], [3, 0])
    assert add_cohook(Symbol.of([0], []), "X", 0, 1) == Symbol.of([], [1])


def test_cocore_when_nothing_fits():
    for sym in symbols(3, range(1, 8, 2)):
        assert d_cocore(sym, sym.rank + 1).equivalent(sym)


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


beta_sets = st.sets(st.integers(0, 25), min_size=1, max_size=8).map(
    lambda s: BetaSet(tuple(sorted(s, reverse=True))))


@given(beta_sets)
def test_beta_partition_roundtrip(x):
    lam = partition_of_beta(x)
    assert beta_of_partition(lam, len(x)) == x
    assert lam.size == x.rank


@given(beta_sets, st.integers(1, 6))
def test_core_has_no_removable_hook(x, d):
    c = d_core(x, d)
    assert all(v - d < 0 or v - d in c for v in c)
    assert x.rank - c.rank == d * d_weight(x, d)


@given(beta_sets, st.integers(1, 6))
def test_hookable_positions_brute_force(x, d):
    y, free = hookable_positions(x, d)
    assert y.equivalent(x)
    assert free == tuple(v for v in y if v + d not in y)
    assert len({v % d for v in y}) == d


@given(beta_sets, st.integers(1, 6), st.data())
def test_add_remove_hook(x, d, data):
    at = data.draw(st.sampled_from(x.elements))
    if at + d in x:
        return
    y = add_hook(x, at, d)
    assert y.rank == x.rank + d
    assert remove_hook(y, at + d, d) == x


symbols_st = st.tuples(
    st.sets(st.integers(0, 12), max_size=5), st.sets(st.integers(0, 12), max_size=5)
).map(lambda p: Symbol.of(sorted(p[0], reverse=True), sorted(p[1], reverse=True)))


@given(symbols_st, st.integers(1, 4), st.data())
def test_cohook_moves_one_bead_across(sym, d, data):
    side = data.draw(st.sampled_from(["X", "Y"]))
    row = sym.side(side)
    other = sym.Y if side == "X" else sym.X
    if not row.elements:
        return
    at = data.draw(st.sampled_from(row.elements))
    if at + d in other:
        return
    new = add_cohook(sym, side, at, d)
    assert new.rank == sym.rank + d
    # sizes of the two rows shift by one each: |signed defect change| = 2
    assert sorted((len(new.X), len(new.Y))) == sorted((len(row) - 1, len(other) + 1))
    moved_to = BetaSet(tuple(sorted(set(other.elements) | {at + d}, reverse=True)))
    back_side = "X" if new.X == moved_to else "Y"
    assert new.side(back_side) == moved_to
    assert remove_cohook(new, back_side, at + d, d).equivalent(sym)


@given(symbols_st, st.integers(1, 4))
def test_cocore_is_idempotent(sym, d):
    c = d_cocore(sym, d)
    assert d_cocore(c, d).equivalent(c)
    assert (sym.rank - c.rank) % d == 0


@given(symbols_st, st.integers(1, 4))
def test_cohookable_positions_are_free(sym, d):
    s, xp, yp = cohookable_positions(sym, d)
    assert s.equivalent(sym)
    assert all(v + d not in s.Y for v in xp)
    assert all(v + d not in s.X for v in yp)
