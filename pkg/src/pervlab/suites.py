"""Verification suites.

Each suite returns a Report; `run_suite` dispatches by name.  Sweeps fan
out over ranks on a thread pool and are merged back in rank order, so the
output does not depend on scheduling.
"""

import cmath
import math
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache

from .betacombinat import (
    BetaSet,
    Symbol,
    beta_of_partition,
    d_cocore,
    d_core,
    partition_of_beta,
    partitions,
    symbol_core,
)
from .brauertree import (
    TreeError,
    available_fixtures,
    build_tree,
    either_variants,
    load_fixture,
    recompute_fixture,
    verify_perverse_conditions,
)
from .cyclopoly import (
    CycloFactor,
    ScaledCycloProduct,
    b_d,
    b_twisted,
    divisors,
    factor_q_power_difference,
    phi_d_totient,
    primitive_root,
    substitute_neg_q,
)
from .perverse import (
    AlgorithmError,
    alternating_sum,
    algorithmically_equivalent,
    decomposition_matrix,
    derive_equivalent_ordering,
    genericity_check,
    line_tree,
    run_algorithm,
)
from .perversity import (
    Report,
    check_d12_shortcut,
    check_integrality,
    check_parity,
    gl_branch,
    gu_branches,
    is_principal,
    pi_closed_gl,
    pi_closed_gu,
    pi_closed_symbol,
    pi_of_degrees,
    symbol_branches,
    tau1_bound,
)
from .staralgebra import StarAlgebra
from .unideg import (
    FAMILIES,
    block_characters,
    check_family,
    degree,
    e_from_d,
    symbol_family,
    valid_d,
)

SWEEP_MAX_N = {"GL": 20, "GU": 16, "BC": 12, "Dplus": 12, "Dminus": 12}
TREE_MAX_N = {"GL": 10, "GU": 9, "BC": 7, "Dplus": 7, "Dminus": 7}


def _families(family):
    return FAMILIES if family is None else (check_family(family),)


def _fan_out(jobs, fn, workers):
    """Apply fn to each job, in parallel if asked; results in job order."""
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def _block_sweep(name, check, family, max_n, workers, weight_one=False, limits=SWEEP_MAX_N):
    jobs = [(fam, n) for fam in _families(family) for n in range(1, (max_n or limits[fam]) + 1)]

    def one(job):
        fam, n = job
        rep = Report(name)
        for d in valid_d(fam, n):
            for block in block_characters(fam, n, d):
                if not weight_one or block.weight == 1:
                    rep.merge(check(block))
        return rep

    rep = Report(name)
    for part in _fan_out(jobs, one, workers):
        rep.merge(part)
    return rep


# ---------------------------------------------------------------- G2(3)

# The printed data for G2(3), l = 13, d = 6, pi = (0,3,3,3,4,4).
G2_PI = (0, 3, 3, 3, 4, 4)
G2_COMPLEXES = {
    # owner: (projectives from the far end, degree-0 top, degree-0 socle, dimension)
    2: ((2, 6, 6), 6, 5, 12),
    3: ((3, 2, 2), 2, 6, 11),
    4: ((4, 3, 3), 3, 2, 12),
    5: ((5, 6, 4, 5), 5, 3, 5),
    6: ((6, 5, 5, 4), 4, 4, 1),
}
G2_COHOMOLOGY = {
    2: {3: (1, 2), 2: (1,)},
    3: {3: (3,), 1: (1,)},
    4: {3: (4,)},
    5: {4: (1, 2, 3, 4, 5)},
    6: {4: (6,)},
}
G2_TOTALS = {2: "2", 3: "3-1", 4: "4", 5: "5-4-3-2+1", 6: "6"}
G2_MATRIX = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (1, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 1, 1, 1, 1, 0),
    (0, 0, 0, 0, 0, 1),
)


def suite_g2_example(**_) -> Report:
    rep = Report("g2-example")
    xs = run_algorithm(StarAlgebra(6, 13), G2_PI)
    by_owner = {x.owner: x for x in xs}
    for owner, (projs, top, soc, dim) in G2_COMPLEXES.items():
        x = by_owner[owner]
        rep.checked += 1
        got = (x.projectives, x.degree_zero.top, x.degree_zero.socle, x.degree_zero.length)
        if got != (projs, top, soc, dim):
            rep.violations.append(f"X_{owner}: complex {got}, printed {(projs, top, soc, dim)}")
    for owner, table in G2_COHOMOLOGY.items():
        rep.checked += 1
        got = {j: m.layers() for j, m in by_owner[owner].cohomology}
        if got != table:
            rep.violations.append(f"X_{owner}: cohomology {got}, printed {table}")
    for owner, total in G2_TOTALS.items():
        rep.checked += 1
        got = str(alternating_sum(by_owner[owner]))
        if got != total:
            rep.violations.append(f"X_{owner}: total {got}, printed {total}")
    rep.checked += 1
    matrix = decomposition_matrix(xs)
    if matrix != G2_MATRIX:
        rep.violations.append(f"decomposition matrix {matrix}")
    return rep


# ---------------------------------------------------------------- sweeps

def suite_integrality(family=None, max_n=None, workers=None, **_) -> Report:
    return _block_sweep("integrality", check_integrality, family, max_n, workers)


def suite_parity(family=None, max_n=None, workers=None, **_) -> Report:
    return _block_sweep("parity", check_parity, family, max_n, workers, weight_one=True)


def suite_shortcut(family=None, max_n=None, workers=None, **_) -> Report:
    fams = [f for f in _families(family) if f in ("GL", "GU")]
    rep = Report("shortcut")
    for fam in fams:
        for n in range(1, (max_n or 10) + 1):
            for d in (1, 2):
                for block in block_characters(fam, n, d):
                    if is_principal(block):
                        rep.merge(check_d12_shortcut(block))
    return rep


# ---------------------------------------------------------------- closed forms

def _random_beta(rng, size=8, top=24) -> BetaSet:
    return BetaSet(tuple(sorted(rng.sample(range(top), rng.randint(1, size)), reverse=True)))


def _random_symbol(rng) -> Symbol:
    while True:
        xs = rng.sample(range(16), rng.randint(0, 6))
        ys = rng.sample(range(16), rng.randint(0, 6))
        if xs or ys:
            return Symbol.of(xs, ys)


def _gl_core_checks(core, d, rep):
    _, br = gl_branch(core, d)
    psi = degree("GL", core)
    for j, lab in enumerate(br.labels, 1):
        rep.checked += 1
        want = pi_of_degrees(d, degree("GL", lab), psi)
        got = pi_closed_gl(core, d, j)
        if got != want:
            rep.violations.append(f"GL d={d} core={core} j={j}: closed {got}, degrees {want}")


def _gu_core_checks(core, d, rep):
    _, sig, tau = gu_branches(core, d)
    psi = degree("GU", core)
    for br in (sig, tau):
        for i, lab in enumerate(br.labels, 1):
            rep.checked += 1
            want = pi_of_degrees(d, degree("GU", lab), psi)
            got = pi_closed_gu(core, d, br.name, i)
            if got != want:
                rep.violations.append(f"GU d={d} core={core} {br.name}_{i}: closed {got}, degrees {want}")


def _symbol_core_checks(family, core, d, rep):
    if core.degenerate:
        rep.skipped.append(f"{family} d={d} core={core}: degenerate")
        return
    _, sig, tau = symbol_branches(family, core, d)
    psi = degree(symbol_family(core), core)
    for br in (sig, tau):
        for i, lab in enumerate(br.labels, 1):
            rep.checked += 1
            want = pi_of_degrees(d, degree(symbol_family(lab), lab), psi)
            got = pi_closed_symbol(family, core, d, br.name, i)
            if got != want:
                rep.violations.append(
                    f"{family} d={d} core={core} {br.name}_{i}: closed {got}, degrees {want}")


def _symbol_core(sym: Symbol, d: int) -> Symbol:
    e = d if d % 2 else d // 2
    return (symbol_core(sym, e) if d % 2 else d_cocore(sym, e)).normalize()


def suite_closed_forms(seed=0, samples=500, max_core=15, max_d=10, **_) -> Report:
    """Exhaustive GL d-cores up to the given size, then random cores for
    every family."""
    rep = Report("closed-forms")
    for d in range(1, max_d + 1):
        for n in range(max_core + 1):
            for lam in partitions(n):
                if d_core(beta_of_partition(lam), d).rank == n:
                    _gl_core_checks(lam, d, rep)
    rng = random.Random(seed)
    for _ in range(samples):
        d = rng.randint(1, max_d)
        _gl_core_checks(partition_of_beta(d_core(_random_beta(rng), d)), d, rep)
    for _ in range(samples):
        d = rng.randint(1, 12)
        core = partition_of_beta(d_core(_random_beta(rng), e_from_d("GU", d)))
        _gu_core_checks(core, d, rep)
    done = {"BC": 0, "Dplus": 0, "Dminus": 0}
    while min(done.values()) < samples:
        d = rng.randint(1, 12)
        core = _symbol_core(_random_symbol(rng), d)
        fam = symbol_family(core)
        if done[fam] >= samples:
            continue
        done[fam] += 1
        _symbol_core_checks(fam, core, d, rep)
    return rep


# ---------------------------------------------------------------- trees

def _tau1(family, core, d, rep):
    if core.degenerate:
        rep.skipped.append(f"tau_1 {family} d={d} core={core}: degenerate")
        return
    got = tau1_bound(family, core, d)
    if got is None:
        rep.skipped.append(f"tau_1 {family} d={d} core={core}: no short arm")
        return
    rep.checked += 1
    value, bound = got
    if value < bound:
        rep.violations.append(f"tau_1 {family} d={d} core={core}: pi = {value} < 2 delta = {bound}")


def suite_trees(family=None, max_n=None, workers=None, seed=0, samples=500, **_) -> Report:
    def check(block):
        rep = Report("trees")
        try:
            tree = build_tree(block)
        except TreeError as exc:
            rep.skipped.append(f"{block.family}{block.n} d={block.d} core={block.core}: {exc}")
            return rep
        rep.merge(verify_perverse_conditions(tree))
        if block.family not in ("GL", "GU") and block.d % 2 == 0:
            _tau1(block.family, block.core, block.d, rep)
        return rep

    rep = _block_sweep("trees", check, family, max_n, workers, weight_one=True, limits=TREE_MAX_N)
    if family is None:
        for group, d in available_fixtures():
            for tree in load_fixture(group, d).trees:
                for variant in either_variants(tree):
                    part = verify_perverse_conditions(variant)
                    part.violations = [f"{group} d={d} {variant.name}: {v}" for v in part.violations]
                    rep.merge(part)
        rng = random.Random(seed)
        for _ in range(samples):
            d = 2 * rng.randint(1, 6)
            core = _symbol_core(_random_symbol(rng), d)
            _tau1(symbol_family(core), core, d, rep)
    return rep


# ---------------------------------------------------------------- arguments

def suite_arguments(seed=0, samples=10_000, tol=1e-9, **_) -> Report:
    """The argument of f at exp(2 pi i / d) is B_d(f) pi / d."""
    rep = Report("arguments")
    rng = random.Random(seed)
    for _ in range(samples):
        d = rng.randint(1, 30)
        counts = {}
        for _ in range(rng.randint(1, 8)):
            r = rng.randint(1, 60)
            if r != d:
                counts[CycloFactor(r)] = counts.get(CycloFactor(r), 0) + 1
        f = ScaledCycloProduct.make(Fraction(rng.randint(1, 9), rng.randint(1, 9)), rng.randint(0, 6), counts)
        value = f.evaluate(primitive_root(d))
        rep.checked += 1
        want = cmath.exp(1j * math.pi * float(b_d(d, f)) / d)
        if abs(value / abs(value) - want) > tol:
            rep.violations.append(f"d={d} f={f}: {value / abs(value)} vs {want}")
    return rep


# ---------------------------------------------------------------- B identities

@lru_cache(maxsize=None)
def _b_pm(d, a, b, sign):
    """B_d(q^a + sign q^b), in either order of a and b."""
    return b_d(d, factor_q_power_difference(max(a, b), min(a, b), sign))


def _b_neg(d, a, b):
    """B_d((-q)^a - (-q)^b)."""
    sign = -((-1) ** (a + b))
    return _b_pm(d, a, b, sign)


def _b_prod(d, exps, neg=False):
    f = ScaledCycloProduct.one()
    for a in exps:
        f = f * factor_q_power_difference(a, 0, -1)
    return b_d(d, substitute_neg_q(f) if neg else f)


def _expect_linear_minus(d, g):
    if g > 0:
        return 2 * d
    if -d < g < 0:
        return d
    return 0 if g < -d else None


def _expect_linear_plus(d, g):
    if 2 * g > -d:
        return 2 * d
    return d if 2 * g == -d else 0


def _expect_unitary(d, e, g):
    """Change in B_d((-q)^i - (-q)^j) when e is added to i, with g = i - j."""
    odd = g % 2 == 1
    if g > 0 or (odd and 2 * g > -d):
        return {d: 2 * d, 2 * d: 4 * d}.get(e, d)
    if e == d:
        if not odd and -d < g < 0:
            return d
        return 0 if g < -d or odd else None
    if e == 2 * d:
        if not odd and -d < g < 0:
            return 3 * d
        if odd and -3 * d < 2 * g < -d:
            return 2 * d
        if not odd and -2 * d < g < -d:
            return d
        return 0
    return 0


def _expect_cohook(d, g, which):
    e = d // 2
    if which == 1:
        return d if g > 0 else 0
    return d if g > -e else 0


# printed B values for the twisted alphas, keyed by alpha then factor
TWISTED_TABLE = {
    "8a": {"q": 6, "P1": 7, "P2": 3, "P4": 14, "P8b": 14, "P12": 20, "P24a": 20, "P24b": 28},
    "24a": {"q": 10, "P1": 17, "P2": 5, "P4": 10, "P8a": 10, "P8b": 34, "P12": 44, "P24b": 44},
    "12a": {"q": 10, "P1": 11, "P2": 5, "P4": 22, "P12b": 14},
}
# entries where the printed value disagrees with the rule and the trees
# side with the rule: (printed, computed)
TWISTED_MISPRINTS = {("12a", "P12b"): (14, 22)}


def suite_b_identities(max_r=200, max_d=50, max_ij=40, **_) -> Report:
    from .cyclopoly import parse_product

    rep = Report("b-identities")

    def expect(label, got, want):
        rep.checked += 1
        if got != want:
            rep.violations.append(f"{label}: got {got}, expected {want}")

    for d in range(2, max_d + 1):
        for r in range(1, max_r + 1):
            expect(f"B_{d}(q^{r}-1)", _b_prod(d, [r]), r + d * (r // d) + Fraction(d, 2))
            # phi_d(1) = 1/2 carries the d/2 of Phi_1
            expect(f"sum phi_{d} over divisors of {r}",
                   sum(phi_d_totient(i, d) for i in divisors(r)), r // d + Fraction(1, 2))

    for d in range(2, max_ij + 1):
        eu = e_from_d("GU", d)
        es = e_from_d("BC", d)
        for i in range(max_ij + 1):
            for j in range(max_ij + 1):
                g = i - j
                if g > 0:
                    expect(f"B_{d}(q^{i}-q^{j})", _b_pm(d, i, j, -1), i + j + d * (g // d) + Fraction(d, 2))
                    expect(f"B_{d}(q^{i}+q^{j})", _b_pm(d, i, j, 1), i + j + d * ((2 * g) // d - g // d))
                if g and i + d != j:
                    want = _expect_linear_minus(d, g)
                    if want is not None:
                        expect(f"linear minus d={d} i={i} j={j}",
                               _b_pm(d, i + d, j, -1) - _b_pm(d, i, j, -1), want)
                expect(f"linear plus d={d} i={i} j={j}",
                       _b_pm(d, i + d, j, 1) - _b_pm(d, i, j, 1), _expect_linear_plus(d, g))
                if g and i + eu != j:
                    want = _expect_unitary(d, eu, g)
                    if want is not None:
                        expect(f"unitary d={d} e={eu} i={i} j={j}",
                               _b_neg(d, i + eu, j) - _b_neg(d, i, j), want)
                if d % 2 == 0:
                    e = d // 2
                    skip = j > i and g % e == 0
                    if g and not skip:
                        expect(f"cohook plus d={d} i={i} j={j}",
                               _b_pm(d, i + e, j, 1) - _b_pm(d, i, j, -1), _expect_cohook(d, g, 1))
                    if i + e != j and not skip:
                        expect(f"cohook minus d={d} i={i} j={j}",
                               _b_pm(d, i + e, j, -1) - _b_pm(d, i, j, 1), _expect_cohook(d, g, 2))
        for n in range(max_ij + 1):
            expect(f"GL product d={d} n={n}", _b_prod(d, range(n + 1, n + d + 1)),
                   2 * n * d + d * d + Fraction(3 * d, 2))
            expect(f"GU product d={d} n={n}", _b_prod(d, range(n + 1, n + eu + 1), neg=True),
                   2 * n * eu + eu * (eu + 1) + Fraction(d, 2))
            expect(f"symplectic product d={d} n={n}", _b_prod(d, [2 * i for i in range(n + 1, n + es + 1)]),
                   4 * n * es + 2 * es * es + 2 * es + Fraction(d, 2))

    for alpha, row in TWISTED_TABLE.items():
        for fac, printed in row.items():
            got = b_twisted(alpha, parse_product(fac))
            rep.checked += 1
            if got == printed:
                continue
            known = TWISTED_MISPRINTS.get((alpha, fac))
            if known and known == (printed, got):
                rep.skipped.append(f"B_{alpha}({fac}): printed {printed} is a misprint for {got}")
            else:
                rep.violations.append(f"B_{alpha}({fac}): got {got}, printed {printed}")
    return rep


# ---------------------------------------------------------------- star-side suites

GENERICITY_CASES = ((4, 5, 13), (6, 13, 19))


def suite_genericity(seed=0, samples=200, max_pi=8, **_) -> Report:
    rep = Report("genericity")
    rng = random.Random(seed)
    for d, l1, l2 in GENERICITY_CASES:
        for _ in range(samples):
            pi = tuple(rng.randint(0, max_pi) for _ in range(d))
            rep.checked += 1
            try:
                res = genericity_check(d, pi, l1, l2)
            except AlgorithmError as exc:
                rep.violations.append(f"d={d} pi={pi}: {exc}")
                continue
            bad = [k for k, v in res.items() if not v]
            if bad:
                rep.violations.append(f"d={d} l=({l1},{l2}) pi={pi}: {', '.join(bad)} differ")
    return rep


def _prime_for(d: int) -> int:
    """Smallest prime l with d | l - 1 and multiplicity at least 2."""
    ell = 2 * d + 1
    while any(ell % p == 0 for p in range(2, math.isqrt(ell) + 1)):
        ell += d
    return ell


def random_admissible(pi0, parent, rng, max_bump=3):
    """pi0 plus even bumps that never exceed the bump nearer the
    exceptional vertex, so pi still increases toward it."""
    bumps = [None] * len(pi0)
    pending = list(range(len(pi0)))
    while pending:
        for k in list(pending):
            up = parent[k]
            if up is None:
                bumps[k] = rng.randint(0, max_bump)
            elif bumps[up] is not None:
                bumps[k] = rng.randint(0, bumps[up])
            else:
                continue
            pending.remove(k)
    return tuple(p + 2 * b for p, b in zip(pi0, bumps))


def suite_equivalence(seed=0, samples=100, max_d=8, **_) -> Report:
    rep = Report("equivalence")
    rng = random.Random(seed)
    for d in range(1, max_d + 1):
        alg = StarAlgebra(d, _prime_for(d))
        for a in range(1, d + 1):
            b = d - a
            for offset in (0, 1):
                pi0, order0, parent = line_tree(a, b, offset)
                for _ in range(samples):
                    pi1 = random_admissible(pi0, parent, rng)
                    rep.checked += 1
                    try:
                        order1 = derive_equivalent_ordering(pi0, pi1, order0, parent)
                        same = algorithmically_equivalent(alg, pi0, order0, pi1, order1)
                    except (AlgorithmError, ValueError) as exc:
                        rep.violations.append(f"line ({a},{b}) pi'={pi1}: {exc}")
                        continue
                    if not same:
                        rep.violations.append(f"line ({a},{b}) offset {offset} pi'={pi1}: runs differ")
    return rep


def suite_fixtures(**_) -> Report:
    rep = Report("fixtures")
    for group, d in available_fixtures():
        part = recompute_fixture(load_fixture(group, d))
        part.violations = [f"{group} d={d}: {v}" for v in part.violations]
        rep.merge(part)
    return rep


SUITES = {
    "g2-example": suite_g2_example,
    "integrality": suite_integrality,
    "parity": suite_parity,
    "closed-forms": suite_closed_forms,
    "trees": suite_trees,
    "arguments": suite_arguments,
    "b-identities": suite_b_identities,
    "shortcut": suite_shortcut,
    "genericity": suite_genericity,
    "equivalence": suite_equivalence,
    "fixtures": suite_fixtures,
}


def run_suite(name: str, **kw) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    kw = {k: v for k, v in kw.items() if v is not None}
    return SUITES[name](**kw)
