"""Characteristic vectors, the coloured untying invariant and classification.

A p-coloured knot is represented by a Seifert matrix M and a vector v over Z/p
with (M + M^T) v = 0, the mod p class of the characteristic link in H1 of the
surface. The invariant is

    cu(M, v) = (v^T (M + M^T) v) / p  mod p,

computed on the lift of v to 0..p-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import DimensionError, InconsistencyError, NotColourableError, ValidationError
from .exact_algebra import IntMatrix, ModPVector, check_prime, kernel_mod_p
from .seifert import SeifertData, connect_sum, torus_2p

__all__ = [
    "ColouredSeifert",
    "CuValue",
    "ClassLabel",
    "characteristic_vectors",
    "default_colouring",
    "cu",
    "cu_additive",
    "reference",
    "classify",
    "colorable_smn_table",
    "stabilize",
    "PROVEN_PRIMES",
]

# primes for which the p classes are known to be complete
PROVEN_PRIMES = (3, 5)


@dataclass(frozen=True)
class ColouredSeifert:
    seifert: SeifertData
    p: int
    v: ModPVector

    def __post_init__(self):
        check_prime(self.p)
        if self.v.p != self.p:
            raise ValidationError(f"vector is mod {self.v.p}, expected mod {self.p}")
        if len(self.v) != self.seifert.M.nrows:
            raise DimensionError(f"vector length {len(self.v)} for a {self.seifert.M.nrows}-dim surface")
        if self.v.is_zero():
            raise ValidationError("the zero vector is the trivial colouring")
        if any(x % self.p for x in self.seifert.symmetrized.apply(self.v.entries)):
            raise ValidationError("(M + M^T) v is not 0 mod p")

    @classmethod
    def of(cls, s: SeifertData, p: int, v: Sequence[int]) -> ColouredSeifert:
        return cls(s, p, ModPVector.of(v, check_prime(p)))

    def scaled(self, c: int) -> ColouredSeifert:
        return ColouredSeifert(self.seifert, self.p, self.v.scale(c))


@dataclass(frozen=True)
class CuValue:
    p: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"cu value {self.value} outside 0..{self.p - 1}")

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class ClassLabel:
    p: int
    n: int
    reference: str = "left"
    conjectural: bool = False

    def __post_init__(self):
        if not 1 <= self.n <= self.p:
            raise ValueError(f"class index {self.n} outside 1..{self.p}")


def characteristic_vectors(s: SeifertData, p: int) -> list[ModPVector]:
    """All nonzero v with (M + M^T) v = 0 mod p, ordered by kernel coordinates."""
    basis = kernel_mod_p(s.symmetrized, check_prime(p))
    out = []
    for coeffs in product(range(p), repeat=len(basis)):
        if any(coeffs):
            acc = ModPVector(p, (0,) * s.M.nrows)
            for c, b in zip(coeffs, basis):
                acc = acc + b.scale(c)
            out.append(acc)
    return out


def default_colouring(s: SeifertData, p: int) -> ColouredSeifert:
    """The knot with its first echelon kernel vector; NotColourableError if none."""
    basis = kernel_mod_p(s.symmetrized, check_prime(p))
    if not basis:
        raise NotColourableError(f"knot is not {p}-colourable")
    return ColouredSeifert(s, p, basis[0])


def cu(c: ColouredSeifert) -> CuValue:
    w = c.seifert.symmetrized.quadratic(c.v.entries)
    if w % c.p:
        raise InconsistencyError(f"v^T (M+M^T) v = {w} is not divisible by {c.p}")
    return CuValue(c.p, (w // c.p) % c.p)


def cu_additive(a: ColouredSeifert, b: ColouredSeifert) -> CuValue:
    """cu of the connected sum, checked against cu(a) + cu(b)."""
    if a.p != b.p:
        raise ValidationError(f"modulus mismatch: {a.p} vs {b.p}")
    joined = ColouredSeifert(
        connect_sum(a.seifert, b.seifert), a.p, ModPVector(a.p, a.v.entries + b.v.entries)
    )
    total = cu(joined)
    if total.value != (cu(a).value + cu(b).value) % a.p:
        raise InconsistencyError("cu is not additive on this pair")
    return total


def reference(p: int, handedness: str = "left") -> ColouredSeifert:
    """The (p,2)-torus knot with its first echelon kernel vector."""
    return default_colouring(torus_2p(p, handedness), p)


def classify(c: ColouredSeifert, handedness: str = "left") -> ClassLabel:
    """n = cu(c) / cu(reference) mod p, in 1..p."""
    ref = cu(reference(c.p, handedness)).value
    if ref == 0:
        raise InconsistencyError("reference knot has cu = 0")
    n = cu(c).value * pow(ref, -1, c.p) % c.p
    return ClassLabel(c.p, n or c.p, handedness, c.p not in PROVEN_PRIMES)


def colorable_smn_table(p: int, bound: int) -> list[tuple[int, int]]:
    """(m, n) with |m|, |n| <= bound and 4mn = 1 mod p, in (m, n) order."""
    check_prime(p)
    r = range(-bound, bound + 1)
    return [(m, n) for m in r for n in r if (4 * m * n - 1) % p == 0]


def stabilize(c: ColouredSeifert, xi: Sequence[int]) -> ColouredSeifert:
    """Elementary enlargement M' = [[M,0,0],[xi^T,0,1],[0,0,0]].

    v is extended by (0, -xi.v); this is a zero extension whenever xi.v = 0 mod p.
    """
    m = c.seifert.M
    k = m.nrows
    if len(xi) != k:
        raise DimensionError(f"xi has length {len(xi)}, expected {k}")
    rows = [list(r) + [0, 0] for r in m.rows]
    rows.append([int(x) for x in xi] + [0, 1])
    rows.append([0] * (k + 2))
    s = SeifertData(IntMatrix.from_rows(rows, k + 2), c.seifert.provenance)
    tail = -sum(a * b for a, b in zip(xi, c.v.entries))
    return ColouredSeifert.of(s, c.p, list(c.v.entries) + [0, tail])
