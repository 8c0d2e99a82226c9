"""Seifert matrices for the knots the invariant needs.

Orientation convention: ``M[i][j] = lk(x_i, x_j^+)``, pinned so that ``smn(1, 1)``
(the left-hand trefoil) is ``[[1, 1], [0, 1]]``. Positive braid crossings then
contribute ``-1`` on the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, ValidationError
from .exact_algebra import IntMatrix, check_prime, det_integer
from .knot_codec import BraidWord

__all__ = [
    "SeifertData",
    "smn",
    "torus_2p",
    "seifert_from_braid",
    "connect_sum",
    "mirror_seifert",
    "symplectic_frame",
    "knot_determinant",
]

PROVENANCES = ("smn", "torus", "braid", "direct", "connect_sum")


@dataclass(frozen=True)
class SeifertData:
    M: IntMatrix
    provenance: str = "direct"

    def __post_init__(self):
        if not self.M.is_square or self.M.nrows % 2:
            raise DimensionError(f"Seifert matrix must be square of even size, got {self.M.shape}")
        if det_integer(self.M - self.M.T) != 1:
            raise ValidationError("det(M - M^T) != 1: not the Seifert matrix of a knot")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @classmethod
    def of(cls, rows, provenance: str = "direct") -> SeifertData:
        return cls(IntMatrix.from_rows(rows), provenance)

    @property
    def genus(self) -> int:
        return self.M.nrows // 2

    @property
    def symmetrized(self) -> IntMatrix:
        return self.M + self.M.T


def knot_determinant(s: SeifertData) -> int:
    """|det(M + M^T)|."""
    return abs(det_integer(s.symmetrized))


def smn(m: int, n: int) -> SeifertData:
    return SeifertData.of([[m, 1], [0, n]], "smn")


def torus_2p(p: int, handedness: str = "left") -> SeifertData:
    """(p,2)-torus knot: upper bidiagonal of ones (left), or its mirror (right)."""
    check_prime(p)
    if handedness not in ("left", "right"):
        raise ValueError(f"handedness must be 'left' or 'right', got {handedness!r}")
    k = p - 1
    left = IntMatrix.from_rows([[int(j in (i, i + 1)) for j in range(k)] for i in range(k)], k)
    m = left if handedness == "left" else -left.T
    return SeifertData(m, "torus")


def connect_sum(a: SeifertData, b: SeifertData) -> SeifertData:
    return SeifertData(a.M.direct_sum(b.M), "connect_sum")


def mirror_seifert(a: SeifertData) -> SeifertData:
    return SeifertData(-a.M.T, a.provenance)


# Linking of a loop x in column i with a loop y in column i+1 whose spans
# interleave, as (lk(x,y+), lk(y,x+)), keyed by which loop starts first.
# Nested spans do not link.
_ADJ_X_FIRST = (-1, 0)
_ADJ_Y_FIRST = (1, 0)


def _braid_loops(b: BraidWord) -> list[tuple[int, int, int, int, int]]:
    """Loops of the braid surface: (column, start, end, sign at start, sign at end)."""
    loops = []
    for col in range(1, b.strands):
        pos = [k for k, x in enumerate(b.letters) if abs(x) == col]
        for s, e in zip(pos, pos[1:]):
            loops.append((col, s, e, _sgn(b.letters[s]), _sgn(b.letters[e])))
    return loops


def _sgn(x: int) -> int:
    return 1 if x > 0 else -1


def seifert_from_braid(b: BraidWord) -> SeifertData:
    """Seifert matrix of the canonical surface of a braid closure.

    One disc per strand and one half-twisted band per letter; H1 is spanned by
    loops through consecutive bands of the same generator.
    """
    loops = _braid_loops(b)
    n = len(loops)
    m = [[0] * n for _ in range(n)]
    for i, (ci, si, ei, a, z) in enumerate(loops):
        if a == z:
            m[i][i] = -a
        for j, (cj, sj, ej, _, _) in enumerate(loops):
            if j == i:
                continue
            if cj == ci and sj == ei:
                # consecutive loops sharing the band at ei
                m[i][j], m[j][i] = (1, 0) if z > 0 else (0, -1)
            elif cj == ci + 1:
                if si < sj < ei < ej:
                    m[i][j], m[j][i] = _ADJ_X_FIRST
                elif sj < si < ej < ei:
                    m[i][j], m[j][i] = _ADJ_Y_FIRST
    return SeifertData(IntMatrix.from_rows(m, n), "braid")


def symplectic_frame(s: SeifertData) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular P with P^T (M - M^T) P = J, the standard form with pairs
    (2k, 2k+1) satisfying J[2k][2k+1] = 1. Returns (P, P^-1)."""
    n = s.M.nrows
    a = [list(r) for r in (s.M - s.M.T).rows]
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    q = [[int(i == j) for j in range(n)] for i in range(n)]  # inverse of p

    # Column op c_j += f c_k on P is A -> E^T A E; mirror it in P^-1 as row op r_k -= f r_j.
    def add(j, k, f):
        for r in a:
            r[j] += f * r[k]
        a[j] = [x + f * y for x, y in zip(a[j], a[k])]
        for r in p:
            r[j] += f * r[k]
        q[k] = [x - f * y for x, y in zip(q[k], q[j])]

    def swap(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        a[j], a[k] = a[k], a[j]
        for r in p:
            r[j], r[k] = r[k], r[j]
        q[j], q[k] = q[k], q[j]

    def negate(j):
        for r in a:
            r[j] = -r[j]
        a[j] = [-x for x in a[j]]
        for r in p:
            r[j] = -r[j]
        q[j] = [-x for x in q[j]]

    for t in range(0, n, 2):
        # Euclid on row t to leave a single unit entry at column t+1
        while True:
            nz = [j for j in range(t + 1, n) if a[t][j]]
            if len(nz) == 1 and abs(a[t][nz[0]]) == 1:
                break
            k = min(nz, key=lambda j: abs(a[t][j]))
            for j in nz:
                if j != k:
                    add(j, k, -(a[t][j] // a[t][k]))
        swap(t + 1, nz[0])
        if a[t][t + 1] < 0:
            negate(t + 1)
        # clear the rest of rows t and t+1
        for j in range(t + 2, n):
            if a[t][j]:
                add(j, t + 1, -a[t][j])
            if a[t + 1][j]:
                add(j, t, a[t + 1][j])
    return IntMatrix.from_rows(p, n), IntMatrix.from_rows(q, n)
