"""Partitions, beta-sets, the d-abacus and symbols.

A beta-set encodes a partition by its first-column hook lengths; adding
{0} and shifting everything up by one gives the same partition.  A symbol
is an unordered pair of beta-sets shifted together.  Hooks move one bead
by d inside a set; cohooks move it by d across to the other set.
"""

import re
from dataclasses import dataclass


class CombinatoricsError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts if p != 0)
        if any(p < 0 for p in parts):
            raise CombinatoricsError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise CombinatoricsError(f"parts not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise CombinatoricsError(f"bad partition {text!r}")
        inner = body[1:-1].strip()
        return cls(tuple(int(t) for t in inner.split(",")) if inner else ())


def partitions(n: int, largest: int = None):
    """All partitions of n, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest.parts)


@dataclass(frozen=True)
class BetaSet:
    elements: tuple  # strictly decreasing

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements), reverse=True))
        if len(els) != len(self.elements):
            raise CombinatoricsError(f"repeated element in {self.elements}")
        if els and els[-1] < 0:
            raise CombinatoricsError(f"negative element in {self.elements}")
        object.__setattr__(self, "elements", els)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    @property
    def rank(self) -> int:
        s = len(self.elements)
        return sum(self.elements) - s * (s - 1) // 2

    def shift(self, k: int = 1) -> "BetaSet":
        """An equivalent beta-set with k more elements."""
        if k < 0:
            raise CombinatoricsError("use normalize to shrink a beta-set")
        return BetaSet(tuple(x + k for x in self.elements) + tuple(range(k)))

    def normalize(self) -> "BetaSet":
        """The smallest equivalent beta-set (0 not an element)."""
        els = self.elements
        k = 0
        while k < len(els) and els[len(els) - 1 - k] == k:
            k += 1
        return BetaSet(tuple(x - k for x in els[: len(els) - k]))

    def padded(self, size: int) -> "BetaSet":
        base = self.normalize()
        if size < len(base):
            raise CombinatoricsError(f"no equivalent beta-set of size {size}")
        return base.shift(size - len(base))

    def equivalent(self, other: "BetaSet") -> bool:
        return self.normalize() == other.normalize()

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"

    @classmethod
    def parse(cls, text: str) -> "BetaSet":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise CombinatoricsError(f"bad beta-set {text!r}")
        inner = body[1:-1].strip()
        return cls(tuple(int(t) for t in inner.split(",")) if inner else ())


def beta_of_partition(lam: Partition, s: int = None) -> BetaSet:
    parts = lam.parts
    if s is None:
        s = len(parts)
    if s < len(parts):
        raise CombinatoricsError(f"size {s} is smaller than the {len(parts)} parts of {lam}")
    padded = parts + (0,) * (s - len(parts))
    return BetaSet(tuple(p + s - 1 - i for i, p in enumerate(padded)))


def partition_of_beta(x: BetaSet) -> Partition:
    s = len(x)
    return Partition(tuple(v - (s - 1 - i) for i, v in enumerate(x.elements)))


def add_hook(x: BetaSet, at: int, d: int) -> BetaSet:
    if at not in x:
        raise CombinatoricsError(f"{at} is not in {x}")
    if at + d in x:
        raise CombinatoricsError(f"{at + d} is already in {x}")
    return BetaSet(tuple(v for v in x if v != at) + (at + d,))


def remove_hook(x: BetaSet, at: int, d: int) -> BetaSet:
    if at not in x:
        raise CombinatoricsError(f"{at} is not in {x}")
    if at - d < 0:
        raise CombinatoricsError(f"{at} - {d} is negative")
    if at - d in x:
        raise CombinatoricsError(f"{at - d} is already in {x}")
    return BetaSet(tuple(v for v in x if v != at) + (at - d,))


def abacus(x: BetaSet, d: int) -> dict:
    """runner -> sorted list of rows holding a bead (position = d*row + runner)."""
    out = {r: [] for r in range(d)}
    for v in sorted(x.elements):
        out[v % d].append(v // d)
    return out


def from_abacus(beads: dict, d: int) -> BetaSet:
    return BetaSet(tuple(d * row + r for r, rows in beads.items() for row in rows))


def render_abacus(x: BetaSet, d: int) -> str:
    top = max(x.elements, default=0) // d
    lines = []
    for row in range(top + 1):
        lines.append(" ".join("o" if d * row + r in x else "." for r in range(d)))
    return "\n".join(lines)


def d_core(x: BetaSet, d: int) -> BetaSet:
    """Push every bead as far up its runner as it goes.  Keeps the size."""
    if d < 1:
        raise CombinatoricsError("d must be positive")
    counts = [0] * d
    for v in x.elements:
        counts[v % d] += 1
    return BetaSet(tuple(d * row + r for r in range(d) for row in range(counts[r])))


def d_weight(x: BetaSet, d: int) -> int:
    return (x.rank - d_core(x, d).rank) // d


def hookable_positions(x: BetaSet, d: int) -> tuple:
    """Shift x until every runner holds a bead; return (shifted x, the
    elements v with v + d not in it, descending)."""
    y = x.normalize()
    while len({v % d for v in y.elements}) < d:
        y = y.shift(1)
    free = tuple(v for v in y.elements if v + d not in y)
    return y, free


# ---------------------------------------------------------------- symbols

@dataclass(frozen=True)
class Symbol:
    """Unordered pair {X, Y}; stored with |X| >= |Y| (ties broken by content)."""

    X: BetaSet
    Y: BetaSet

    def __post_init__(self):
        x, y = BetaSet(tuple(self.X)), BetaSet(tuple(self.Y))
        if (len(x), x.elements) < (len(y), y.elements):
            x, y = y, x
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "Y", y)

    @classmethod
    def of(cls, xs, ys) -> "Symbol":
        return cls(BetaSet(tuple(xs)), BetaSet(tuple(ys)))

    @property
    def signed_defect(self) -> int:
        return len(self.X) - len(self.Y)

    @property
    def defect(self) -> int:
        return abs(self.signed_defect)

    @property
    def rank(self) -> int:
        n = len(self.X) + len(self.Y)
        return sum(self.X) + sum(self.Y) - (n - 1) ** 2 // 4

    @property
    def degenerate(self) -> bool:
        return self.X == self.Y

    def shift(self, k: int = 1) -> "Symbol":
        return Symbol(self.X.shift(k), self.Y.shift(k))

    def normalize(self) -> "Symbol":
        x, y = self.X.elements, self.Y.elements
        k = 0
        while k < min(len(x), len(y)) and x[len(x) - 1 - k] == k and y[len(y) - 1 - k] == k:
            k += 1
        return Symbol(BetaSet(tuple(v - k for v in x[: len(x) - k])),
                      BetaSet(tuple(v - k for v in y[: len(y) - k])))

    def equivalent(self, other: "Symbol") -> bool:
        return self.normalize() == other.normalize()

    def side(self, which: str) -> BetaSet:
        return self.X if which == "X" else self.Y

    def __str__(self):
        return "{" + str(self.X) + "," + str(self.Y) + "}"

    @classmethod
    def parse(cls, text: str) -> "Symbol":
        m = re.fullmatch(r"\s*\{\s*(\{[^{}]*\})\s*,\s*(\{[^{}]*\})\s*\}\s*", text)
        if not m:
            raise CombinatoricsError(f"bad symbol {text!r}")
        return cls(BetaSet.parse(m.group(1)), BetaSet.parse(m.group(2)))


def _move(sym: Symbol, side: str, at: int, to: int) -> tuple:
    here, there = (sym.X, sym.Y) if side == "X" else (sym.Y, sym.X)
    if at not in here:
        raise CombinatoricsError(f"{at} is not in {here}")
    if to < 0:
        raise CombinatoricsError(f"target {to} is negative")
    if to in there:
        raise CombinatoricsError(f"{to} is already in {there}")
    return BetaSet(tuple(v for v in here if v != at)), BetaSet(tuple(there) + (to,))


def add_cohook(sym: Symbol, side: str, at: int, d: int) -> Symbol:
    """Move `at` from the given side to the other side as at + d."""
    here, there = _move(sym, side, at, at + d)
    return Symbol(here, there)


def remove_cohook(sym: Symbol, side: str, at: int, d: int) -> Symbol:
    """Move `at` from the given side to the other side as at - d."""
    here, there = _move(sym, side, at, at - d)
    return Symbol(here, there)


def symbol_add_hook(sym: Symbol, side: str, at: int, d: int) -> Symbol:
    if side == "X":
        return Symbol(add_hook(sym.X, at, d), sym.Y)
    return Symbol(sym.X, add_hook(sym.Y, at, d))


def symbol_core(sym: Symbol, d: int) -> Symbol:
    """Remove d-hooks from both rows."""
    return Symbol(d_core(sym.X, d), d_core(sym.Y, d))


def _chains(sym: Symbol, d: int):
    """Cohook moves run along chains: for runner r the chain
    X(r,0), Y(r,1), X(r,2), ... and its partner Y(r,0), X(r,1), ...
    Returns {(r, start_side): [occupied steps]}."""
    out = {}
    for side, row_set in (("X", sym.X), ("Y", sym.Y)):
        for v in row_set:
            r, k = v % d, v // d
            start = side if k % 2 == 0 else ("Y" if side == "X" else "X")
            out.setdefault((r, start), []).append(k)
    return out


def d_cocore(sym: Symbol, d: int) -> Symbol:
    """Push every bead up its cohook chain as far as it goes."""
    if d < 1:
        raise CombinatoricsError("d must be positive")
    xs, ys = [], []
    for (r, start), steps in _chains(sym, d).items():
        for k in range(len(steps)):
            on_start = k % 2 == 0
            side = start if on_start else ("Y" if start == "X" else "X")
            (xs if side == "X" else ys).append(d * k + r)
    return Symbol(BetaSet(tuple(xs)), BetaSet(tuple(ys)))


def d_coweight(sym: Symbol, d: int) -> int:
    return (sym.rank - d_cocore(sym, d).rank) // d


def cohookable_positions(sym: Symbol, d: int) -> tuple:
    """Shift until every cohook chain holds a bead; return (shifted symbol,
    X' = {x : x + d not in Y}, Y' = {y : y + d not in X}), each descending."""
    s = sym.normalize()
    while len(_chains(s, d)) < 2 * d:
        s = s.shift(1)
    xp = tuple(v for v in s.X if v + d not in s.Y)
    yp = tuple(v for v in s.Y if v + d not in s.X)
    return s, xp, yp


def symbol_hookable_positions(sym: Symbol, d: int) -> tuple:
    """Shift until both rows have a bead on every runner; return
    (shifted symbol, X' , Y') for hooks inside each row."""
    s = sym.normalize()
    while len({v % d for v in s.X}) < d or len({v % d for v in s.Y}) < d:
        s = s.shift(1)
    xp = tuple(v for v in s.X if v + d not in s.X)
    yp = tuple(v for v in s.Y if v + d not in s.Y)
    return s, xp, yp


def bipartitions(n: int):
    for k in range(n + 1):
        for a in partitions(k):
            for b in partitions(n - k):
                yield a, b


def symbol_of_bipartition(a: Partition, b: Partition, defect: int) -> Symbol:
    """The symbol with rows built from a (larger row) and b, the given defect."""
    t = max(len(b), len(a) - defect, 0)
    s = t + defect
    return Symbol(beta_of_partition(a, s), beta_of_partition(b, t)).normalize()


def symbols(rank: int, defects):
    """All symbols of the given rank whose defect lies in `defects`.

    Defect-0 symbols are unordered: each appears once.
    """
    seen = set()
    for delta in defects:
        base = (delta * delta - 1) // 4 if delta % 2 else delta * delta // 4
        if base > rank:
            continue
        for a, b in bipartitions(rank - base):
            sym = symbol_of_bipartition(a, b, delta)
            if sym not in seen:
                seen.add(sym)
                yield sym
