"""The perversity function pi and the checks that go with it.

pi(chi) = (B_d(chi(1)) - B_d(psi(1))) / d, with psi the cuspidal character
of the block's core.  Closed combinatorial forms for weight-1 blocks of the
classical families live here too, along with the branch data (which bead
moves give which character) that the tree builders reuse.
"""

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .betacombinat import (
    BetaSet,
    Partition,
    Symbol,
    add_cohook,
    beta_of_partition,
    cohookable_positions,
    hookable_positions,
    partition_of_beta,
    symbol_add_hook,
    symbol_hookable_positions,
)
from .cyclopoly import b_value, parse_d, primitive_root
from .unideg import BlockSpec, UniChar, block_characters, check_family, e_from_d


class NonIntegralPi(ArithmeticError):
    """pi came out as a proper fraction."""


def pi_of_degrees(d_spec, chi_degree, psi_degree) -> int:
    d, _ = parse_d(d_spec)
    value = (b_value(d_spec, chi_degree) - b_value(d_spec, psi_degree)) / d
    if Fraction(value).denominator != 1:
        raise NonIntegralPi(f"pi = {value} for degree {chi_degree} over {psi_degree}, d = {d_spec}")
    return int(value)


def pi(block: BlockSpec, ch: UniChar) -> int:
    if ch not in block.characters:
        raise ValueError(f"{ch} is not in the block with core {block.core}")
    return pi_of_degrees(block.d, ch.degree, block.core_degree)


def block_pis(block: BlockSpec) -> list:
    return [(ch, pi(block, ch)) for ch in block.characters]


# ---------------------------------------------------------------- reports

@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.violations += other.violations
        self.skipped += other.skipped
        return self

    def summary(self) -> str:
        state = "ok" if self.ok else "FAIL"
        return (f"{self.name}: {state} ({self.checked} checked, "
                f"{len(self.violations)} violations, {len(self.skipped)} skipped)")


def _where(block, ch=None):
    out = f"{block.family}{block.n} d={block.d} core={block.core}"
    return out if ch is None else f"{out} chi={ch}"


def check_integrality(block: BlockSpec) -> Report:
    rep = Report("integrality")
    for ch in block.characters:
        rep.checked += 1
        try:
            pi(block, ch)
        except NonIntegralPi as exc:
            rep.violations.append(f"{_where(block, ch)}: {exc}")
    return rep


def check_parity(block: BlockSpec, rel_tol: float = 1e-8) -> Report:
    """chi(1)/psi(1) at a primitive d-th root of unity is real with sign
    (-1)^pi(chi).  Blocks where Phi_d does not cancel are skipped."""
    rep = Report("parity")
    z = primitive_root(block.d)
    for ch in block.characters:
        quotient = ch.degree / block.core_degree
        if quotient.multiplicity(block.d) != 0:
            rep.skipped.append(f"{_where(block, ch)}: Phi_{block.d} does not cancel")
            continue
        rep.checked += 1
        value = quotient.evaluate(z)
        p = pi(block, ch)
        if abs(value.imag) > rel_tol * abs(value):
            rep.violations.append(f"{_where(block, ch)}: value {value} is not real")
        elif (value.real > 0) != (p % 2 == 0):
            rep.violations.append(f"{_where(block, ch)}: value {value.real:.6g} but pi = {p}")
    return rep


def is_principal(block: BlockSpec) -> bool:
    if isinstance(block.core, Partition):
        return block.core.size <= 1 and block.core_degree.degree == 0
    return block.core_degree.degree == 0 and block.core_degree.without_scalar() == block.core_degree


def check_d12_shortcut(block: BlockSpec) -> Report:
    """For d = 1, 2 on a principal block, pi = 2 deg chi(1) / d."""
    rep = Report("d12-shortcut")
    if block.d not in (1, 2):
        raise ValueError(f"the shortcut is for d = 1, 2; got {block.d}")
    for ch in block.characters:
        rep.checked += 1
        want = Fraction(2 * ch.degree.degree, block.d)
        got = pi(block, ch)
        if got != want:
            rep.violations.append(f"{_where(block, ch)}: pi = {got}, 2 deg / d = {want}")
    return rep


# ---------------------------------------------------------------- branches

@dataclass(frozen=True)
class Branch:
    """One arm of a weight-1 tree, nearest-to-exceptional vertex last.

    `positions[i]` is the bead moved for the (i+1)-th character and
    `labels[i]` is the label it produces.
    """

    name: str
    positions: tuple
    labels: tuple


def _beta(core) -> BetaSet:
    return core if isinstance(core, BetaSet) else beta_of_partition(core)


def gl_branch(core, d: int) -> tuple:
    """(shifted beta-set, Branch) for GL/GU-style hooks of length d."""
    x, free = hookable_positions(_beta(core), d)
    labels = []
    for v in free:
        moved = BetaSet(tuple(w + d if w == v else w for w in x.elements))
        labels.append(partition_of_beta(moved))
    return x, Branch("chi", free, tuple(labels))


def _count(xs, pred) -> int:
    return sum(1 for v in xs if pred(v))


def pi_closed_gl(core, d: int, j: int) -> int:
    """pi of the j-th character (1-based, by descending bead) of the GL
    block of weight 1 over the d-core `core`."""
    x, br = gl_branch(core, d)
    n = x.rank
    v = br.positions[j - 1]
    below = _count(x, lambda w: w < v)
    return 2 * (n - v + below) + (j - 1)


def gu_branches(core, d: int) -> tuple:
    """(shifted beta-set, sigma, tau): the free beads split by parity,
    sigma the even ones."""
    e = e_from_d("GU", d)
    x, br = gl_branch(core, e)
    sig = [(p, lab) for p, lab in zip(br.positions, br.labels) if p % 2 == 0]
    tau = [(p, lab) for p, lab in zip(br.positions, br.labels) if p % 2 == 1]
    mk = lambda name, items: Branch(name, tuple(p for p, _ in items), tuple(lab for _, lab in items))
    return x, mk("sigma", sig), mk("tau", tau)


def _gu_counts(x: BetaSet, v: int, d: int) -> tuple:
    """f1..f5 for the bead v; distances are compared doubled so that
    half-integers d/2 and 3d/2 need no rounding."""
    others = [w for w in x if w != v]
    same = [w - v for w in others if (w - v) % 2 == 0]
    opp = [w - v for w in others if (w - v) % 2 == 1]
    f1 = _count(others, lambda w: w < v)
    f2 = _count(opp, lambda g: 0 < 2 * g < d)
    f3 = _count(same, lambda g: 0 < g < d)
    f4 = _count(opp, lambda g: d < 2 * g < 3 * d)
    f5 = _count(same, lambda g: d < g < 2 * d)
    return f1, f2, f3, f4, f5


def pi_closed_gu(core, d: int, branch: str, i: int) -> int:
    """pi of sigma_i or tau_i (1-based, descending) in GU."""
    x, sig, tau = gu_branches(core, d)
    br = sig if branch == "sigma" else tau
    v = br.positions[i - 1]
    n = x.rank
    e = e_from_d("GU", d)
    f1, f2, f3, f4, f5 = _gu_counts(x, v, d)
    if e == d:
        return 2 * (n - v) + 2 * (f1 + f2) + f3
    if 2 * e == d:
        return n - v + f1 + f2
    return 4 * (n - v) + 4 * f1 + 4 * f2 + 3 * f3 + 2 * f4 + f5


def symbol_branches(family: str, core: Symbol, d: int) -> tuple:
    """(shifted symbol, sigma, tau) for a symbol block of weight 1.

    d odd: hooks inside each row, sigma from X.  d even: cohooks of length
    d/2, sigma moving beads out of X (the larger row)."""
    e = e_from_d(family, d)
    if d % 2:
        s, xp, yp = symbol_hookable_positions(core, e)
        move = lambda side, v: symbol_add_hook(s, side, v, e)
    else:
        s, xp, yp = cohookable_positions(core, e)
        move = lambda side, v: add_cohook(s, side, v, e)
    sig = Branch("sigma", xp, tuple(move("X", v).normalize() for v in xp))
    tau = Branch("tau", yp, tuple(move("Y", v).normalize() for v in yp))
    return s, sig, tau


def pi_closed_symbol(family: str, core: Symbol, d: int, branch: str, i: int) -> int:
    """pi of sigma_i / tau_i (1-based, descending bead) for BC and D."""
    check_family(family)
    s, sig, tau = symbol_branches(family, core, d)
    own, other = (s.X, s.Y) if branch == "sigma" else (s.Y, s.X)
    v = (sig if branch == "sigma" else tau).positions[i - 1]
    n = s.rank
    below = _count(own, lambda w: w < v)
    f1 = _count(other, lambda y: 2 * (v - y) > -d)
    if d % 2:
        value = 4 * (n - v) + 2 * (below + f1) + (i - 1)
        return value - (2 if family.startswith("D") else 0)
    value = 2 * (n - v) + below + f1
    return value - (1 if family.startswith("D") else 0)


def pi_closed_bc(core: Symbol, d: int, side: str, i: int) -> int:
    return pi_closed_symbol("BC", core, d, side, i)


def pi_closed_d(family: str, core: Symbol, d: int, side: str, i: int) -> int:
    return pi_closed_symbol(family, core, d, side, i)


def tau1_bound(family: str, core: Symbol, d: int):
    """(pi(tau_1), 2 delta) for a cohook block (d even) over `core`, or
    None when the short arm is empty."""
    from .unideg import degree, symbol_family

    if d % 2:
        raise ValueError("the tau_1 bound is about cohooks; d must be even")
    _, _, tau = symbol_branches(family, core, d)
    if not tau.positions:
        return None
    lab = tau.labels[0]
    value = pi_of_degrees(d, degree(symbol_family(lab), lab), degree(symbol_family(core), core))
    return value, 2 * core.defect


def sweep_blocks(family: str, max_n: int, weight_one: bool = False):
    """Every block of every rank 1..max_n and every d dividing the order."""
    from .unideg import valid_d

    for n in range(1, max_n + 1):
        for d in valid_d(family, n):
            for block in block_characters(family, n, d):
                if not weight_one or block.weight == 1:
                    yield block
