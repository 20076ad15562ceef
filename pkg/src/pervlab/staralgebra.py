"""Uniserial modules over the star Brauer-tree algebra k(Z_l x| Z_d).

Every indecomposable module is uniserial and is fixed by its socle and its
length.  Simple modules are indexed 1..d; the radical layers of the
projective cover of T_i read i, i+1, ..., cycling mod d, back down to i.
"""

from dataclasses import dataclass


class ModuleError(ValueError):
    pass


def wrap(i: int, d: int) -> int:
    """Reduce an index into the range 1..d."""
    return (i - 1) % d + 1


@dataclass(frozen=True)
class StarAlgebra:
    d: int
    ell: int

    def __post_init__(self):
        if self.d < 1:
            raise ModuleError(f"need d >= 1, got {self.d}")
        if self.ell < 2 or (self.ell - 1) % self.d:
            raise ModuleError(f"need d | ell - 1, got d={self.d}, ell={self.ell}")

    @property
    def m(self) -> int:
        """Multiplicity of the exceptional vertex."""
        return (self.ell - 1) // self.d

    def proj(self, i: int) -> "UniserialModule":
        return UniserialModule(self, wrap(i, self.d), self.ell)

    def simple(self, i: int) -> "UniserialModule":
        return UniserialModule(self, wrap(i, self.d), 1)

    def zero(self) -> "UniserialModule":
        return UniserialModule(self, 1, 0)

    def from_top(self, top: int, length: int) -> "UniserialModule":
        """The uniserial module with the given top and length."""
        return UniserialModule(self, wrap(top + length - 1, self.d), length)

    def omega_inv(self, mod: "UniserialModule") -> "UniserialModule":
        """Cokernel of the injective hull of `mod`."""
        mod._check_proper()
        return UniserialModule(self, wrap(mod.top - 1, self.d), self.ell - mod.length)

    def omega(self, mod: "UniserialModule") -> "UniserialModule":
        """Kernel of the projective cover of `mod`."""
        mod._check_proper()
        return UniserialModule(self, mod.top, self.ell - mod.length)


@dataclass(frozen=True)
class UniserialModule:
    alg: StarAlgebra
    socle: int
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= self.alg.ell:
            raise ModuleError(f"length {self.length} outside 0..{self.alg.ell}")
        if not 1 <= self.socle <= self.alg.d:
            raise ModuleError(f"socle {self.socle} outside 1..{self.alg.d}")
        if self.length == 0 and self.socle != 1:
            # normalise the zero module
            object.__setattr__(self, "socle", 1)

    @property
    def top(self) -> int:
        if self.length == 0:
            raise ModuleError("the zero module has no top")
        return wrap(self.socle - self.length + 1, self.alg.d)

    @property
    def is_zero(self) -> bool:
        return self.length == 0

    @property
    def is_projective(self) -> bool:
        return self.length == self.alg.ell

    def layers(self) -> tuple:
        """Radical layers from top to socle."""
        if self.length == 0:
            return ()
        return tuple(wrap(self.top + k, self.alg.d) for k in range(self.length))

    def composition_factors(self) -> dict:
        counts = {}
        for s in self.layers():
            counts[s] = counts.get(s, 0) + 1
        return counts

    def submodule_of_length(self, k: int) -> "UniserialModule":
        if not 0 <= k <= self.length:
            raise ModuleError(f"no submodule of length {k} in a module of length {self.length}")
        return UniserialModule(self.alg, self.socle, k)

    def quotient_by_bottom(self, k: int) -> "UniserialModule":
        """Quotient by the unique submodule of length k."""
        if not 0 <= k <= self.length:
            raise ModuleError(f"cannot factor out length {k} from length {self.length}")
        if k == self.length:
            return self.alg.zero()
        return UniserialModule(self.alg, wrap(self.socle - k, self.alg.d), self.length - k)

    def _check_proper(self):
        if self.length == 0 or self.length == self.alg.ell:
            raise ModuleError("Heller translate needs a non-zero non-projective module")

    def __str__(self):
        return f"U(socle={self.socle},len={self.length} | {'/'.join(map(str, self.layers()))})"
