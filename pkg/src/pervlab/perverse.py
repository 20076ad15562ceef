"""The perverse-equivalence algorithm over the star algebra.

For each simple module of the block we build a complex of modules for the
star algebra: projective covers in degrees -pi(i)..-1 and a uniserial
module (the Green correspondent) in degree 0.  Cohomology, alternating sums
and the decomposition matrix they determine are read off from it.
"""

import json
from dataclasses import dataclass, field

from .staralgebra import StarAlgebra, UniserialModule, wrap


class AlgorithmError(RuntimeError):
    """An invariant of the algorithm failed."""


@dataclass(frozen=True)
class StarComplex:
    owner: int
    pi: int
    projectives: tuple  # indices of Proj(T_a) in degrees -pi, ..., -1
    degree_zero: UniserialModule
    cohomology: tuple  # (j, module) pairs for H^{-j}, j = pi down to 0, non-zero only
    perversity: tuple  # pi of T_1..T_d, needed for the signs of the alternating sum

    def terms(self) -> dict:
        out = {-self.pi + k: ("P", a) for k, a in enumerate(self.projectives)}
        out[0] = ("U", self.degree_zero)
        return out

    def cohomology_at(self, j: int) -> UniserialModule:
        for deg, mod in self.cohomology:
            if deg == j:
                return mod
        return self.degree_zero.alg.zero()


@dataclass
class VirtualCharacter:
    coefficients: dict = field(default_factory=dict)

    def add(self, i: int, c: int):
        v = self.coefficients.get(i, 0) + c
        if v:
            self.coefficients[i] = v
        else:
            self.coefficients.pop(i, None)

    def vector(self, d: int) -> tuple:
        return tuple(self.coefficients.get(i, 0) for i in range(1, d + 1))

    def __eq__(self, other):
        return isinstance(other, VirtualCharacter) and self.coefficients == other.coefficients

    def __str__(self):
        if not self.coefficients:
            return "0"
        # owner's sign first, then descending indices
        parts = []
        for i in sorted(self.coefficients, reverse=True):
            c = self.coefficients[i]
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign}{mag}{i}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _largest_small_extension(alg, top, pi, bound):
    """Number of layers above `top` in a uniserial chain, reading
    top-1, top-2, ..., before meeting a simple of pi-value >= bound."""
    s = 0
    while pi[wrap(top - 1 - s, alg.d)] < bound:
        s += 1
        if s >= alg.d:
            raise AlgorithmError("extension reached a full period of the star")
    return s


def run_one(alg: StarAlgebra, pi: dict, i: int) -> StarComplex:
    """The complex attached to the simple T_i with perversity pi[i]."""
    p = pi[i]
    pis = tuple(pi[a] for a in range(1, alg.d + 1))
    if p == 0:
        t = alg.simple(i)
        return StarComplex(i, 0, (), t, ((0, t),), pis)
    # H^{-p}: T_i and everything directly above it of smaller pi
    r = _largest_small_extension(alg, i, pi, p)
    m = UniserialModule(alg, i, r + 1)
    projectives = [i]
    cohomology = [(p, m)]
    low = alg.omega_inv(m)
    for j in range(p - 1, 0, -1):
        soc = low.socle
        if pi[soc] <= j:
            raise AlgorithmError(f"socle T_{soc} of degree -{j} projective has pi <= {j}")
        projectives.append(soc)
        s = _largest_small_extension(alg, low.top, pi, j)
        if s:
            cohomology.append((j, alg.from_top(low.top - s, s)))
        m = UniserialModule(alg, soc, low.length + s)
        if m.is_projective:
            raise AlgorithmError("kernel swallowed the whole projective")
        low = alg.omega_inv(m)
    return StarComplex(i, p, tuple(projectives), low, tuple(cohomology), pis)


def run_algorithm(alg: StarAlgebra, pi, ordering=None) -> list:
    """Run the algorithm for every simple.

    `pi` is a sequence indexed by ordering slot; `ordering[k]` names the
    simple T_a that slot k is paired with (identity when omitted).
    Complexes come back in slot order.
    """
    d = alg.d
    if len(pi) != d:
        raise ValueError(f"need {d} perversity values, got {len(pi)}")
    if any(p < 0 for p in pi):
        raise ValueError("perversity values must be non-negative")
    if ordering is None:
        ordering = tuple(range(1, d + 1))
    if sorted(ordering) != list(range(1, d + 1)):
        raise ValueError(f"ordering must be a permutation of 1..{d}")
    by_simple = {ordering[k]: pi[k] for k in range(d)}
    return [run_one(alg, by_simple, ordering[k]) for k in range(d)]


def alternating_sum(x: StarComplex) -> VirtualCharacter:
    """Signed composition factors of the cohomology, sign (-1)^(j - pi(S))."""
    v = VirtualCharacter()
    for j, mod in x.cohomology:
        for s in mod.layers():
            v.add(s, (-1) ** ((j - x.perversity[s - 1]) % 2))
    return v


def decomposition_matrix(complexes) -> tuple:
    """Rows (one per slot, columns in slot order) solving sum c_a row_a = e_i.

    The total of each complex is read in slot coordinates through the
    owner of each slot, and rows are fixed in increasing pi order.
    """
    d = len(complexes)
    slot_of = {x.owner: k for k, x in enumerate(complexes)}
    rows = [None] * d
    for k in sorted(range(d), key=lambda k: (complexes[k].pi, k)):
        x = complexes[k]
        total = alternating_sum(x).coefficients
        if total.get(x.owner) != 1:
            raise AlgorithmError(f"slot {k + 1}: own coefficient is {total.get(x.owner, 0)}, not 1")
        row = [0] * d
        row[k] = 1
        for a, c in total.items():
            if a == x.owner:
                continue
            other = rows[slot_of[a]]
            if other is None:
                raise AlgorithmError(f"slot {k + 1} depends on slot {slot_of[a] + 1} of no smaller pi")
            row = [u - c * v for u, v in zip(row, other)]
        if min(row) < 0:
            raise AlgorithmError(f"slot {k + 1}: negative decomposition number in {row}")
        rows[k] = tuple(row)
    return tuple(rows)


def genericity_check(d: int, pi, ell1: int, ell2: int, ordering=None) -> dict:
    """Compare runs for two values of ell with the same d and pi."""
    a1, a2 = StarAlgebra(d, ell1), StarAlgebra(d, ell2)
    xs = run_algorithm(a1, pi, ordering)
    ys = run_algorithm(a2, pi, ordering)

    def key(m):
        return (m.socle, m.length)

    projectives = all(x.projectives == y.projectives for x, y in zip(xs, ys))
    cohomology = all(
        [(j, key(m)) for j, m in x.cohomology] == [(j, key(m)) for j, m in y.cohomology]
        for x, y in zip(xs, ys)
    )
    short = all(m.length <= d for x in xs + ys for _, m in x.cohomology)
    degree_zero = True
    for x, y in zip(xs, ys):
        if x.pi % 2 == 0:
            same = key(x.degree_zero) == key(y.degree_zero)
        else:
            same = key(a1.omega(x.degree_zero)) == key(a2.omega(y.degree_zero))
        degree_zero = degree_zero and same
    return {
        "projectives": projectives,
        "cohomology": cohomology,
        "cohomology_within_d": short,
        "degree_zero": degree_zero,
        "ok": projectives and cohomology and degree_zero,
    }


def _signature(alg, pi, ordering):
    out = []
    for x in run_algorithm(alg, pi, ordering):
        slot_of = {t: k + 1 for k, t in enumerate(ordering)}
        total = alternating_sum(x).coefficients
        out.append((x.degree_zero, tuple(sorted((slot_of[t], c) for t, c in total.items()))))
    return out


def algorithmically_equivalent(alg, pi0, ordering0, pi1, ordering1) -> bool:
    """Same degree-0 modules slot by slot, and the same alternating sums once
    each is written in terms of the slots (the simple modules of the block)."""
    return _signature(alg, pi0, ordering0) == _signature(alg, pi1, ordering1)


def line_tree(a: int, b: int, offset: int = 0):
    """Slots, canonical pi and canonical ordering for a line-shaped tree.

    The exceptional vertex has `a` edges on one side and `b` on the other.
    Slots run along the first arm from its far end inwards, then along the
    second arm from the exceptional vertex outwards.  Returns
    (pi0, ordering, parent) where parent[k] is the slot sharing a
    non-exceptional vertex with slot k on the exceptional side, or None.
    """
    if a < 1 or b < 0:
        raise ValueError("need a >= 1 and b >= 0")
    r = max(a, b) - 1
    pi0 = tuple(r - (a - 1 - k) + offset for k in range(a)) + tuple(r - k + offset for k in range(b))
    ordering = tuple(range(1, a + 1)) + tuple(range(a + b, a, -1))
    parent = tuple(k + 1 if k < a - 1 else None for k in range(a)) + tuple(
        a + k - 1 if k > 0 else None for k in range(b)
    )
    return pi0, ordering, parent


def check_admissible(pi0, pi1, parent=None):
    """Raise unless pi1 - pi0 is even and non-negative and pi1 strictly
    increases toward the exceptional vertex."""
    for k, (p, q) in enumerate(zip(pi0, pi1)):
        if q < p or (q - p) % 2:
            raise ValueError(f"slot {k + 1}: {q} - {p} is not a non-negative even integer")
    if parent is not None:
        for k, up in enumerate(parent):
            if up is not None and not pi1[up] > pi1[k]:
                raise ValueError(f"pi does not increase from slot {k + 1} to slot {up + 1}")


def derive_equivalent_ordering(pi0, pi1, ordering0=None, parent=None) -> tuple:
    """An ordering for pi1 algorithmically equivalent to (pi0, ordering0).

    Slots where the two functions agree keep their simple and drop out;
    the rest lose 2 from pi1 and pass their simple to the next one still in
    play (cyclically), until nothing is left.
    """
    d = len(pi0)
    if len(pi1) != d:
        raise ValueError("perversity functions of different lengths")
    check_admissible(pi0, pi1, parent)
    order = list(ordering0 or range(1, d + 1))
    current = list(pi1)
    active = list(range(d))
    while True:
        active = [k for k in active if current[k] != pi0[k]]
        if not active:
            return tuple(order)
        for k in active:
            current[k] -= 2
        held = sorted(order[k] for k in active)
        step = {t: held[(n + 1) % len(held)] for n, t in enumerate(held)}
        for k in active:
            order[k] = step[order[k]]


def complexes_to_json(complexes) -> str:
    out = []
    for x in complexes:
        out.append({
            "owner": x.owner,
            "pi": x.pi,
            "terms": {str(-x.pi + k): {"proj": a} for k, a in enumerate(x.projectives)}
            | {"0": {"socle": x.degree_zero.socle, "length": x.degree_zero.length}},
            "cohomology": {str(-j): {"socle": m.socle, "length": m.length, "layers": list(m.layers())}
                           for j, m in x.cohomology},
            "total": {str(k): v for k, v in sorted(alternating_sum(x).coefficients.items())},
        })
    return json.dumps(out, indent=2, sort_keys=True)
