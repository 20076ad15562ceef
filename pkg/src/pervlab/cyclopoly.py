"""Products of cyclotomic polynomials and powers of q, with a scalar.

Values are kept in factored form: a scalar from Q, Q(sqrt 2) or Q(sqrt 3),
a power of q and a multiset of cyclotomic factors.  Besides the ordinary
Phi_r there are six factors over the quadratic fields, the halves of
Phi_8, Phi_12 and Phi_24, spelled 8a/8b/12a/12b/24a/24b.

The main use is the B-function: B_d(f) * pi / d is the argument of f at a
primitive d-th root of unity.
"""

import cmath
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class TwistedFactorError(ValueError):
    """A twisted factor was handed to a function that only takes Phi_r."""


# ---------------------------------------------------------------- arithmetic

@lru_cache(maxsize=None)
def divisors(n: int) -> tuple:
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return tuple(sorted(set(small + [n // k for k in small])))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def primitive_exponents(r: int) -> tuple:
    """The j in 0..r-1 with e^(2 pi i j / r) a root of Phi_r."""
    if r == 1:
        return (0,)
    return tuple(j for j in range(1, r) if math.gcd(j, r) == 1)


def phi_d_totient(r: int, d: int) -> Fraction:
    """Count of 1 <= k <= r/d with gcd(k, r) = 1; 1/2 at r = 1."""
    if r < 1 or d < 1:
        raise ValueError(f"need r, d >= 1, got r={r}, d={d}")
    if r == 1:
        return Fraction(1, 2)
    return Fraction(sum(1 for k in range(1, r // d + 1) if math.gcd(k, r) == 1))


# ---------------------------------------------------------------- scalars

@dataclass(frozen=True)
class QuadScalar:
    """a + b*sqrt(m) with a, b rational and m in {1, 2, 3}; m = 1 means b = 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.m not in (1, 2, 3):
            raise ValueError(f"unsupported radicand {self.m}")
        if self.m == 1 and self.b:
            raise ValueError("rational scalar with an irrational part")
        if self.b == 0 and self.m != 1:
            object.__setattr__(self, "m", 1)

    @classmethod
    def of(cls, x) -> "QuadScalar":
        return x if isinstance(x, QuadScalar) else cls(Fraction(x))

    @classmethod
    def sqrt(cls, m: int) -> "QuadScalar":
        return cls(Fraction(0), Fraction(1), m)

    def _field(self, other: "QuadScalar") -> int:
        if self.m != 1 and other.m != 1 and self.m != other.m:
            raise ValueError(f"cannot mix sqrt({self.m}) and sqrt({other.m})")
        return max(self.m, other.m)

    def __mul__(self, other):
        other = QuadScalar.of(other)
        m = self._field(other)
        return QuadScalar(self.a * other.a + self.b * other.b * m, self.a * other.b + self.b * other.a, m)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.m

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero scalar")
        return QuadScalar(self.a / n, -self.b / n, self.m)

    def __truediv__(self, other):
        return self * QuadScalar.of(other).inverse()

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.m)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def __str__(self):
        if self.b == 0:
            return _frac(self.a)
        irr = f"{_frac(abs(self.b))} r{self.m}"
        if self.a == 0:
            return ("-" if self.b < 0 else "") + irr
        return f"{_frac(self.a)}{'-' if self.b < 0 else '+'}{irr}"


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- factors

# twisted factors: the exponents j of their roots e^(2 pi i j / r), and
# their printed coefficient lists (constant term first) as (rational, sqrt part)
TWISTED_ROOTS = {
    (8, "a"): (3, 5),
    (8, "b"): (1, 7),
    (12, "a"): (5, 7),
    (12, "b"): (1, 11),
    (24, "a"): (5, 11, 13, 19),
    (24, "b"): (1, 7, 17, 23),
}
_TWISTED_COEFFS = {
    # q^2 + sqrt2 q + 1, q^2 - sqrt2 q + 1
    (8, "a"): ((1, 0), (0, 1), (1, 0)),
    (8, "b"): ((1, 0), (0, -1), (1, 0)),
    # q^2 + sqrt3 q + 1, q^2 - sqrt3 q + 1
    (12, "a"): ((1, 0), (0, 1), (1, 0)),
    (12, "b"): ((1, 0), (0, -1), (1, 0)),
    # q^4 + sqrt2 q^3 + q^2 + sqrt2 q + 1 and its sign flip
    (24, "a"): ((1, 0), (0, 1), (1, 0), (0, 1), (1, 0)),
    (24, "b"): ((1, 0), (0, -1), (1, 0), (0, -1), (1, 0)),
}
_TWISTED_RADICAND = {8: 2, 12: 3, 24: 2}


@dataclass(frozen=True, order=True)
class CycloFactor:
    """Phi_r when tag is empty, otherwise one of the six split halves."""

    r: int
    tag: str = ""

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"Phi_{self.r} does not exist")
        if self.tag and (self.r, self.tag) not in TWISTED_ROOTS:
            raise ValueError(f"no twisted factor {self.r}{self.tag}")

    @property
    def twisted(self) -> bool:
        return bool(self.tag)

    def root_exponents(self) -> tuple:
        """j with e^(2 pi i j / r) a root, each listed once."""
        if self.tag:
            return TWISTED_ROOTS[(self.r, self.tag)]
        return primitive_exponents(self.r)

    @property
    def degree(self) -> int:
        return len(self.root_exponents())

    def evaluate(self, z: complex) -> complex:
        if self.tag:
            rt = math.sqrt(_TWISTED_RADICAND[self.r])
            coeffs = _TWISTED_COEFFS[(self.r, self.tag)]
            return sum((a + b * rt) * z**k for k, (a, b) in enumerate(coeffs))
        out = complex(1)
        for j in self.root_exponents():
            out *= z - cmath.exp(2j * cmath.pi * j / self.r)
        return out

    def __str__(self):
        return f"P{self.r}{self.tag}"


def _check_twisted_roots():
    """Re-expand each twisted factor from its roots against the printed form."""
    for (r, tag), coeffs in _TWISTED_COEFFS.items():
        poly = [complex(1)]
        for j in TWISTED_ROOTS[(r, tag)]:
            root = cmath.exp(2j * cmath.pi * j / r)
            nxt = [complex(0)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] += c
                nxt[k] -= root * c
            poly = nxt
        rt = math.sqrt(_TWISTED_RADICAND[r])
        for k, (a, b) in enumerate(coeffs):
            if abs(poly[k] - (a + b * rt)) > 1e-12:
                raise AssertionError(f"root set of P{r}{tag} disagrees with its coefficients")


_check_twisted_roots()


# ---------------------------------------------------------------- products

@dataclass(frozen=True)
class ScaledCycloProduct:
    """scalar * q^qexp * prod Phi^mult, exponents possibly negative in
    intermediate quotients."""

    scalar: QuadScalar
    qexp: int
    factors: tuple  # sorted ((CycloFactor, mult), ...) with mult != 0

    def __post_init__(self):
        if not self.scalar:
            raise ValueError("zero scalar")

    @classmethod
    def make(cls, scalar=1, qexp=0, factors=None) -> "ScaledCycloProduct":
        counts = Counter()
        for key, mult in (factors.items() if isinstance(factors, dict) else (factors or ())):
            if not isinstance(key, CycloFactor):
                key = CycloFactor(*key) if isinstance(key, tuple) else CycloFactor(key)
            counts[key] += mult
        fs = tuple(sorted((k, v) for k, v in counts.items() if v))
        return cls(QuadScalar.of(scalar), qexp, fs)

    @classmethod
    def one(cls) -> "ScaledCycloProduct":
        return cls.make()

    @classmethod
    def q(cls, power: int = 1) -> "ScaledCycloProduct":
        return cls.make(qexp=power)

    @classmethod
    def phi(cls, r: int, tag: str = "", mult: int = 1) -> "ScaledCycloProduct":
        return cls.make(factors={CycloFactor(r, tag): mult})

    def multiplicity(self, r: int, tag: str = "") -> int:
        return dict(self.factors).get(CycloFactor(r, tag), 0)

    @property
    def has_twisted(self) -> bool:
        return any(f.twisted for f, _ in self.factors)

    @property
    def is_polynomial(self) -> bool:
        return self.qexp >= 0 and all(m > 0 for _, m in self.factors)

    @property
    def degree(self) -> int:
        return self.qexp + sum(f.degree * m for f, m in self.factors)

    def __mul__(self, other):
        if not isinstance(other, ScaledCycloProduct):
            return ScaledCycloProduct(self.scalar * QuadScalar.of(other), self.qexp, self.factors)
        counts = Counter(dict(self.factors))
        counts.update(dict(other.factors))
        return ScaledCycloProduct.make(self.scalar * other.scalar, self.qexp + other.qexp, counts)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ScaledCycloProduct):
            return ScaledCycloProduct(self.scalar / QuadScalar.of(other), self.qexp, self.factors)
        counts = Counter(dict(self.factors))
        counts.subtract(dict(other.factors))
        return ScaledCycloProduct.make(self.scalar / other.scalar, self.qexp - other.qexp, counts)

    def __pow__(self, n: int):
        counts = {f: m * n for f, m in self.factors}
        s = QuadScalar.of(1)
        for _ in range(abs(n)):
            s = s * self.scalar
        if n < 0:
            s = s.inverse()
        return ScaledCycloProduct.make(s, self.qexp * n, counts)

    def without_scalar(self) -> "ScaledCycloProduct":
        return ScaledCycloProduct(QuadScalar.of(1), self.qexp, self.factors)

    def evaluate(self, z) -> complex:
        out = complex(float(self.scalar)) * complex(z) ** self.qexp
        for f, m in self.factors:
            out *= f.evaluate(complex(z)) ** m
        return out

    def __str__(self):
        parts = [] if self.scalar.is_one() else [f"({self.scalar})"]
        if self.qexp == 1:
            parts.append("q")
        elif self.qexp:
            parts.append(f"q^{self.qexp}")
        for f, m in self.factors:
            parts.append(str(f) if m == 1 else f"{f}^{m}")
        return " ".join(parts) or "1"

    @classmethod
    def parse(cls, text: str) -> "ScaledCycloProduct":
        return parse_product(text)


_NUM = r"\d+(?:/\d+)?"
_SCALAR_FORMS = (
    re.compile(rf"(?P<a>-?{_NUM})"),
    re.compile(rf"(?P<a>-?{_NUM})(?P<sign>[+-])(?P<b>{_NUM}) r(?P<m>[23])"),
    re.compile(rf"(?P<sign>-?)(?P<b>{_NUM}) r(?P<m>[23])"),
)
_TOKEN_RE = re.compile(r"^(?:q(?:\^(?P<qe>-?\d+))?|P(?P<r>\d+)(?P<tag>[ab]?)(?:\^(?P<e>-?\d+))?)$")


def _parse_scalar(body: str) -> QuadScalar:
    for form in _SCALAR_FORMS:
        m = form.fullmatch(body)
        if m:
            groups = m.groupdict()
            a = Fraction(groups.get("a") or 0)
            if not groups.get("b"):
                return QuadScalar(a)
            b = Fraction(groups["b"]) * (-1 if groups["sign"] == "-" else 1)
            return QuadScalar(a, b, int(groups["m"]))
    raise ValueError(f"bad scalar ({body})")


def parse_product(text: str) -> ScaledCycloProduct:
    """Inverse of str(ScaledCycloProduct)."""
    text = text.strip()
    scalar = QuadScalar.of(1)
    if text.startswith("("):
        close = text.index(")")
        scalar = _parse_scalar(text[1:close].strip())
        text = text[close + 1:]
    if text.strip() == "1":
        return ScaledCycloProduct.make(scalar)
    qexp = 0
    counts = Counter()
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad factor {tok!r}")
        if m.group("r") is None:
            qexp += int(m.group("qe") or 1)
        else:
            counts[CycloFactor(int(m.group("r")), m.group("tag"))] += int(m.group("e") or 1)
    return ScaledCycloProduct.make(scalar, qexp, counts)


def cyclotomic_factors(n: int) -> Counter:
    """q^n - 1 as a multiset of Phi_m."""
    return Counter({CycloFactor(m): 1 for m in divisors(n)})


def factor_q_power_difference(a: int, b: int, sign: int) -> ScaledCycloProduct:
    """q^a + sign * q^b in factored form."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if a < b or min(a, b) < 0:
        raise ValueError(f"need a >= b >= 0, got a={a}, b={b}")
    if a == b:
        if sign == -1:
            raise ValueError("q^a - q^a is zero")
        return ScaledCycloProduct.make(2, a)
    n = a - b
    if sign == -1:
        return ScaledCycloProduct.make(1, b, cyclotomic_factors(n))
    plus = {CycloFactor(m): 1 for m in divisors(2 * n) if n % m}
    return ScaledCycloProduct.make(1, b, plus)


def substitute_neg_q(f: ScaledCycloProduct) -> ScaledCycloProduct:
    """|f(-q)|: Phi_r <-> Phi_2r for odd r, Phi_r fixed when 4 | r."""
    if f.has_twisted:
        raise TwistedFactorError("q -> -q is only defined here for plain factors")
    counts = Counter()
    for fac, m in f.factors:
        r = fac.r
        if r % 2:
            counts[CycloFactor(2 * r)] += m
        elif r % 4 == 2:
            counts[CycloFactor(r // 2)] += m
        else:
            counts[fac] += m
    scalar = f.scalar
    if float(scalar) < 0:
        scalar = -scalar
    return ScaledCycloProduct.make(scalar, f.qexp, counts)


# ---------------------------------------------------------------- B-functions

@lru_cache(maxsize=None)
def b_factor(d: int, r: int) -> Fraction:
    """B_d(Phi_r) = phi(r) + d * phi_d(r)."""
    return euler_phi(r) + d * phi_d_totient(r, d)


def b_d(d: int, f: ScaledCycloProduct) -> Fraction:
    """B_d on plain products; the scalar does not count."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if f.has_twisted:
        raise TwistedFactorError("twisted factor present; use b_twisted or b_by_zeros")
    total = Fraction(2 * f.qexp)
    for fac, m in f.factors:
        total += m * b_factor(d, fac.r)
    return total


# least argument 2 k pi / d of a root of each twisted factor
TWISTED_ALPHA = {
    "8a": (8, 3), "8b": (8, 1),
    "12a": (12, 5), "12b": (12, 1),
    "24a": (24, 5), "24b": (24, 1),
}


def parse_d(spec) -> tuple:
    """A d value as given on the command line: 4 -> (4, ''), '8a' -> (8, 'a')."""
    s = str(spec).strip()
    m = re.fullmatch(r"(\d+)([ab]?)", s)
    if not m:
        raise ValueError(f"bad d value {spec!r}")
    d, tag = int(m.group(1)), m.group(2)
    if d < 1 or (tag and f"{d}{tag}" not in TWISTED_ALPHA):
        raise ValueError(f"bad d value {spec!r}")
    return d, tag


def _zeros_in_sector(fac: CycloFactor, d: int, k: int) -> int:
    """Roots of fac with argument in [0, 2 k pi / d]."""
    return sum(1 for j in fac.root_exponents() if j * d <= k * fac.r)


def b_by_zeros(d: int, k: int, f: ScaledCycloProduct) -> Fraction:
    """k deg(f) + d * #(zeros with argument in [0, 2 k pi / d]), with
    q counting 2k and Phi_1 counting k + d/2."""
    total = Fraction(2 * k * f.qexp)
    for fac, m in f.factors:
        if fac.r == 1 and not fac.tag:
            total += m * (k + Fraction(d, 2))
        else:
            total += m * (k * fac.degree + d * _zeros_in_sector(fac, d, k))
    return total


def b_twisted(alpha: str, f: ScaledCycloProduct) -> Fraction:
    """B_alpha for alpha in 8a, 8b, 12a, 12b, 24a, 24b."""
    if alpha not in TWISTED_ALPHA:
        raise ValueError(f"unknown twisted value {alpha!r}")
    d, k = TWISTED_ALPHA[alpha]
    own = CycloFactor(d, alpha[-1])
    for fac, m in f.factors:
        if m > 0 and (fac == own or fac == CycloFactor(d)):
            raise ValueError(f"B_{alpha} is not taken on multiples of P{alpha}")
    return b_by_zeros(d, k, f)


def b_value(d_spec, f: ScaledCycloProduct) -> Fraction:
    """B for a d value spelled as on the command line.

    Plain d on a product with twisted factors counts zeros in [0, 2 pi / d];
    on plain products that agrees with b_d.
    """
    d, tag = parse_d(d_spec)
    if tag:
        return b_twisted(f"{d}{tag}", f)
    if f.has_twisted:
        return b_by_zeros(d, 1, f)
    return b_d(d, f)


def divides_phi(d_spec, f: ScaledCycloProduct) -> bool:
    """Does the polynomial attached to d (Phi_d or its twisted half) divide f?"""
    d, tag = parse_d(d_spec)
    if tag:
        return f.multiplicity(d, tag) > 0 or f.multiplicity(d) > 0
    return f.multiplicity(d) > 0 or any(
        fac.r == d and fac.tag and m > 0 for fac, m in f.factors
    )


def primitive_root(d: int) -> complex:
    return cmath.exp(2j * cmath.pi / d)
