"""Exact integer and GF(p) linear algebra.

Everything here works on Python integers, so intermediate values never wrap.
Residues mod p are always stored as canonical representatives in ``0..p-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, InvalidModulusError

__all__ = [
    "IntMatrix",
    "ModPVector",
    "is_prime",
    "check_prime",
    "det_integer",
    "rank_mod_p",
    "kernel_mod_p",
    "rref_mod_p",
    "smith_normal_form",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    """Return ``p`` if it is an odd prime, else raise InvalidModulusError."""
    if isinstance(p, bool) or not isinstance(p, int) or p == 2 or not is_prime(p):
        raise InvalidModulusError(f"modulus must be an odd prime, got {p!r}")
    return p


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix. Shapes with a zero dimension are allowed."""

    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise DimensionError(
                f"entry count does not match declared shape {self.nrows}x{self.ncols}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> IntMatrix:
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(
            self.ncols, self.nrows, tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.nrows, self.ncols, tuple(tuple(-x for x in r) for r in self.rows))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            self.nrows,
            self.ncols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.rows
        return IntMatrix(
            self.nrows,
            other.ncols,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product over the integers."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def quadratic(self, v: Sequence[int]) -> int:
        """v^T M v over the integers."""
        return sum(a * b for a, b in zip(v, self.apply(v)))

    def mod(self, p: int) -> IntMatrix:
        return IntMatrix(self.nrows, self.ncols, tuple(tuple(x % p for x in r) for r in self.rows))

    def direct_sum(self, other: IntMatrix) -> IntMatrix:
        n = self.ncols + other.ncols
        top = [r + (0,) * other.ncols for r in self.rows]
        bottom = [(0,) * self.ncols + r for r in other.rows]
        return IntMatrix(self.nrows + other.nrows, n, tuple(top + bottom))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(
            len(rows), len(cols), tuple(tuple(self.rows[i][j] for j in cols) for i in rows)
        )


@dataclass(frozen=True)
class ModPVector:
    """A vector over Z/p with canonical entries."""

    p: int
    entries: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if any(not 0 <= x < self.p for x in self.entries):
            raise ValueError(f"entries must lie in 0..{self.p - 1}: {self.entries}")

    @classmethod
    def of(cls, values: Iterable[int], p: int) -> ModPVector:
        return cls(p, tuple(int(x) % p for x in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scale(self, c: int) -> ModPVector:
        return ModPVector(self.p, tuple(c * x % self.p for x in self.entries))

    def __add__(self, other: ModPVector) -> ModPVector:
        if self.p != other.p or len(self) != len(other):
            raise DimensionError("vectors are not over the same space")
        return ModPVector(self.p, tuple((a + b) % self.p for a, b in zip(self, other)))


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise DimensionError(f"square matrix required, got {m.nrows}x{m.ncols}")


def det_integer(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    _require_square(m)
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rref_mod_p(m: IntMatrix, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p). Returns (nonzero rows, pivot columns)."""
    check_prime(p)
    a = [[x % p for x in r] for r in m.rows]
    pivots: list[int] = []
    row = 0
    for col in range(m.ncols):
        pr = next((i for i in range(row, len(a)) if a[i][col]), None)
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [x * inv % p for x in a[row]]
        for i in range(len(a)):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a[:row], pivots


def rank_mod_p(m: IntMatrix, p: int) -> int:
    return len(rref_mod_p(m, p)[1])


def kernel_mod_p(m: IntMatrix, p: int) -> list[ModPVector]:
    """Basis of the right null space of ``m`` over GF(p), itself in reduced echelon form."""
    rows, pivots = rref_mod_p(m, p)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for r, pc in zip(rows, pivots):
            v[pc] = -r[f] % p
        basis.append(v)
    if not basis:
        return []
    echelon, _ = rref_mod_p(IntMatrix.from_rows(basis), p)
    return [ModPVector(p, tuple(r)) for r in echelon]


def smith_normal_form(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... (non-negative), one per diagonal position."""
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    for t in range(min(nr, nc)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        changed = True
            if changed:
                continue
            # pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        a[t][t] = abs(a[t][t])
    return tuple(abs(a[k][k]) for k in range(min(nr, nc)))
