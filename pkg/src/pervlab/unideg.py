"""Unipotent character degrees of classical groups and their blocks.

Degrees are assembled directly in factored form from the hook-length style
formulas for GL_n, GU_n (q -> -q), B_n/C_n and the two even orthogonal
types.  Blocks are read off from cores (hooks) and cocores (cohooks).
"""

from collections import Counter
from dataclasses import dataclass, field

from .betacombinat import (
    BetaSet,
    Partition,
    Symbol,
    beta_of_partition,
    d_core,
    d_cocore,
    partition_of_beta,
    partitions,
    symbol_core,
    symbols,
)
from .cyclopoly import CycloFactor, ScaledCycloProduct, divisors, substitute_neg_q

FAMILIES = ("GL", "GU", "BC", "Dplus", "Dminus")


class FamilyError(ValueError):
    pass


def check_family(family: str) -> str:
    if family not in FAMILIES:
        raise FamilyError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return family


def e_from_d(family: str, d: int) -> int:
    check_family(family)
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if family == "GL":
        return d
    if family == "GU":
        if d % 4 == 0:
            return d
        return 2 * d if d % 2 else d // 2
    return d if d % 2 else d // 2


# ---------------------------------------------------------------- degrees

class _Acc:
    """Running factored product with scalar numerator/denominator."""

    def __init__(self):
        self.phis = Counter()
        self.qexp = 0
        self.scalar = 1
        self.scalar_den = 1

    def q_minus_1(self, n: int, sign: int = 1):
        """(q^n - 1)^sign."""
        for m in divisors(n):
            self.phis[m] += sign

    def q_plus_1(self, n: int, sign: int = 1):
        for m in divisors(2 * n):
            if n % m:
                self.phis[m] += sign

    def q2_minus_1_upto(self, x: int, sign: int = 1):
        """prod_{j=1}^{x} (q^{2j} - 1)^sign."""
        for j in range(1, x + 1):
            self.q_minus_1(2 * j, sign)

    def diff(self, a: int, b: int):
        """|q^a - q^b|."""
        hi, lo = max(a, b), min(a, b)
        self.qexp += lo
        self.q_minus_1(hi - lo)

    def plus(self, a: int, b: int):
        hi, lo = max(a, b), min(a, b)
        self.qexp += lo
        if hi == lo:
            self.scalar *= 2
        else:
            self.q_plus_1(hi - lo)

    def result(self) -> ScaledCycloProduct:
        from fractions import Fraction

        f = ScaledCycloProduct.make(
            Fraction(self.scalar, self.scalar_den), self.qexp,
            {CycloFactor(m): k for m, k in self.phis.items()},
        )
        if not f.is_polynomial:
            raise ArithmeticError(f"degree formula left a non-polynomial {f}")
        return f


def _tower(top: int, step: int) -> int:
    total, k = 0, top
    while k >= 2:
        total += k * (k - 1) // 2
        k -= step
    return total


def degree_gl(lam) -> ScaledCycloProduct:
    """Degree of the unipotent character of GL_n labelled by lam (a
    Partition or any beta-set representative)."""
    x = lam if isinstance(lam, BetaSet) else beta_of_partition(lam)
    n = x.rank
    els = x.elements
    s = len(els)
    acc = _Acc()
    for i in range(1, n + 1):
        acc.q_minus_1(i)
    for i in range(s):
        for j in range(i + 1, s):
            acc.diff(els[i], els[j])
    acc.qexp -= _tower(s - 1, 1)
    for v in els:
        for j in range(1, v + 1):
            acc.q_minus_1(j, -1)
    return acc.result()


def degree_gu(lam) -> ScaledCycloProduct:
    return substitute_neg_q(degree_gl(lam))


def _symbol_common(sym: Symbol, acc: _Acc):
    xs, ys = sym.X.elements, sym.Y.elements
    for row in (xs, ys):
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                acc.diff(row[i], row[j])
    for a in xs:
        for b in ys:
            acc.plus(a, b)
    acc.qexp -= _tower(len(xs) + len(ys) - 2, 2)
    for v in xs + ys:
        acc.q2_minus_1_upto(v, -1)


def degree_bc(sym: Symbol) -> ScaledCycloProduct:
    """Types B_n and C_n; odd defect."""
    if sym.defect % 2 == 0:
        raise FamilyError(f"symbol {sym} has even defect; not of type B/C")
    n = sym.rank
    acc = _Acc()
    for i in range(1, n + 1):
        acc.q_minus_1(2 * i)
    _symbol_common(sym, acc)
    acc.scalar_den = 2 ** ((len(sym.X) + len(sym.Y) - 1) // 2)
    return acc.result()


def degree_dplus(sym: Symbol) -> ScaledCycloProduct:
    """Type D_n; defect divisible by 4.  A degenerate symbol labels two
    characters, both of this degree."""
    if sym.defect % 4:
        raise FamilyError(f"symbol {sym} has defect {sym.defect}; not of type D")
    n = sym.rank
    acc = _Acc()
    if n:
        acc.q_minus_1(n)
    for i in range(1, n):
        acc.q_minus_1(2 * i)
    _symbol_common(sym, acc)
    s, t = len(sym.X), len(sym.Y)
    c = s if sym.degenerate else (s + t - 1) // 2
    acc.scalar_den = 2 ** c
    if n == 0:
        # empty group: only the empty symbol pair
        acc.scalar *= 1
    return acc.result()


def degree_dminus(sym: Symbol) -> ScaledCycloProduct:
    """Type 2D_n; defect 2 mod 4."""
    if sym.defect % 4 != 2:
        raise FamilyError(f"symbol {sym} has defect {sym.defect}; not of type 2D")
    n = sym.rank
    acc = _Acc()
    acc.q_plus_1(n)
    for i in range(1, n):
        acc.q_minus_1(2 * i)
    _symbol_common(sym, acc)
    acc.scalar_den = 2 ** ((len(sym.X) + len(sym.Y) - 2) // 2)
    return acc.result()


def symbol_family(sym: Symbol) -> str:
    if sym.defect % 2:
        return "BC"
    return "Dplus" if sym.defect % 4 == 0 else "Dminus"


def degree(family: str, label) -> ScaledCycloProduct:
    check_family(family)
    if family == "GL":
        return degree_gl(label)
    if family == "GU":
        return degree_gu(label)
    return {"BC": degree_bc, "Dplus": degree_dplus, "Dminus": degree_dminus}[family](label)


def group_order(family: str, n: int) -> ScaledCycloProduct:
    """Generic order polynomial."""
    check_family(family)
    acc = _Acc()
    if family in ("GL", "GU"):
        acc.qexp = n * (n - 1) // 2
        for i in range(1, n + 1):
            acc.q_minus_1(i)
        f = acc.result()
        return substitute_neg_q(f) if family == "GU" else f
    if family == "BC":
        acc.qexp = n * n
        for i in range(1, n + 1):
            acc.q_minus_1(2 * i)
        return acc.result()
    acc.qexp = n * (n - 1)
    for i in range(1, n):
        acc.q_minus_1(2 * i)
    if family == "Dplus":
        acc.q_minus_1(n)
    else:
        acc.q_plus_1(n)
    return acc.result()


def valid_d(family: str, n: int) -> list:
    """All d with Phi_d dividing the group order."""
    order = group_order(family, n)
    return sorted(f.r for f, m in order.factors if m > 0 and not f.tag)


# ---------------------------------------------------------------- labels

def labels(family: str, n: int) -> list:
    """Unipotent labels of the rank-n group: partitions or normalized
    symbols.  Degenerate D-symbols appear twice, tagged '+' and '-'."""
    check_family(family)
    if family in ("GL", "GU"):
        return [UniChar(family, lam) for lam in partitions(n)]
    if family == "BC":
        defects = range(1, 2 * n + 3, 2)
    elif family == "Dplus":
        defects = range(0, 2 * n + 3, 4)
    else:
        defects = range(2, 2 * n + 3, 4)
    out = []
    for sym in symbols(n, defects):
        if sym.degenerate:
            out += [UniChar(family, sym, "+"), UniChar(family, sym, "-")]
        else:
            out.append(UniChar(family, sym))
    return out


@dataclass(frozen=True)
class UniChar:
    family: str
    label: object  # Partition or Symbol
    tag: str = ""

    @property
    def degree(self) -> ScaledCycloProduct:
        return _cached_degree(self.family, self.label)

    def __str__(self):
        return f"{self.label}{self.tag}"


_DEGREE_CACHE = {}


def _cached_degree(family, label):
    key = (family, label)
    if key not in _DEGREE_CACHE:
        _DEGREE_CACHE[key] = degree(family, label)
    return _DEGREE_CACHE[key]


# ---------------------------------------------------------------- blocks

def core_of(family: str, label, d: int):
    """The core or cocore that decides block membership, normalized."""
    e = e_from_d(family, d)
    if family in ("GL", "GU"):
        x = beta_of_partition(label)
        return partition_of_beta(d_core(x, e))
    if d % 2:
        return symbol_core(label, e).normalize()
    return d_cocore(label, e).normalize()


def core_degree(family: str, core) -> ScaledCycloProduct:
    """Degree of the cuspidal character labelled by the core, in the group
    of the core's own type (a cohook flips D to 2D and back)."""
    if family in ("GL", "GU"):
        return degree(family, core)
    return degree(symbol_family(core), core)


@dataclass
class BlockSpec:
    family: str
    n: int
    d: int
    e: int
    core: object
    core_degree: ScaledCycloProduct
    characters: list = field(default_factory=list)

    @property
    def weight(self) -> int:
        core_rank = self.core.size if isinstance(self.core, Partition) else self.core.rank
        return (self.n - core_rank) // self.e

    @property
    def key(self) -> str:
        return str(self.core)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "e": self.e,
            "core": str(self.core),
            "core_degree": str(self.core_degree),
            "weight": self.weight,
            "characters": [{"label": str(c), "degree": str(c.degree)} for c in self.characters],
        }


def block_characters(family: str, n: int, d: int) -> list:
    """Split the unipotent characters of the rank-n group into d-blocks."""
    check_family(family)
    e = e_from_d(family, d)
    blocks = {}
    for ch in labels(family, n):
        core = core_of(family, ch.label, d)
        if core not in blocks:
            blocks[core] = BlockSpec(family, n, d, e, core, core_degree(family, core))
        blocks[core].characters.append(ch)
    return sorted(blocks.values(), key=lambda b: (-b.weight, str(b.core)))
