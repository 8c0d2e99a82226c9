"""Band presentations of p-coloured Seifert surfaces.

Bands come in pairs (2k, 2k+1). The Seifert matrix read off a presentation has
the band twists on the diagonal, ``M[2k][2k+1] = 1 + l`` and ``M[2k+1][2k] = l``
inside a pair (``l`` is any extra linking of the two bands), and the symmetric
linking numbers everywhere else, so ``M - M^T`` is always the standard
symplectic form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..coloured_invariant import ColouredSeifert
from ..errors import NotColourableError, ValidationError
from ..exact_algebra import IntMatrix, ModPVector, check_prime
from ..seifert import SeifertData, symplectic_frame

__all__ = ["BandPresentation", "band_matrix", "random_presentation"]


def _dist(x: int, p: int) -> int:
    x %= p
    return min(x, p - x)


def band_matrix(twists: Sequence[int], linking: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(twists)
    m = [[linking[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        m[i][i] = twists[i]
    for k in range(0, n, 2):
        m[k][k + 1] += 1
    return m


@dataclass(frozen=True)
class BandPresentation:
    """``colours[i] = (a, b, c, d)``: the colours at the root of band i, with
    a, b on one side and c, d on the other."""

    p: int
    twists: tuple[int, ...]
    linking: tuple[tuple[int, ...], ...]
    colours: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        check_prime(self.p)
        n = len(self.twists)
        if n % 2:
            raise ValidationError("bands must come in pairs")
        if len(self.colours) != n or len(self.linking) != n or any(len(r) != n for r in self.linking):
            raise ValidationError("twists, linking and colours disagree on the band count")
        for i in range(n):
            if self.linking[i][i]:
                raise ValidationError("linking matrix must have a zero diagonal")
            for j in range(i):
                if self.linking[i][j] != self.linking[j][i]:
                    raise ValidationError("linking matrix must be symmetric")
        for i, (a, b, c, d) in enumerate(self.colours):
            if _dist(b - a, self.p) != _dist(d - c, self.p):
                raise ValidationError(f"band {i}: the two sides have different indices")
        s = self.seifert.symmetrized
        if any(x % self.p for x in s.apply(self.index)):
            raise ValidationError("root colours do not define a colouring of this surface")

    @classmethod
    def of(cls, p, twists, linking, colours) -> BandPresentation:
        return cls(
            p,
            tuple(int(t) for t in twists),
            tuple(tuple(int(x) for x in r) for r in linking),
            tuple(tuple(int(x) % p for x in c) for c in colours),
        )

    @classmethod
    def from_seifert(cls, c: ColouredSeifert) -> BandPresentation:
        """Rewrite (M, v) in a symplectic basis and read off bands."""
        P, Q = symplectic_frame(c.seifert)
        m = (P.T @ c.seifert.M @ P).tolist()
        v = [x % c.p for x in Q.apply(c.v.entries)]
        n = len(v)
        link = [[0 if i == j else m[max(i, j)][min(i, j)] for j in range(n)] for i in range(n)]
        return cls.of(c.p, [m[i][i] for i in range(n)], link, [(0, x, 0, x) for x in v])

    @property
    def genus(self) -> int:
        return len(self.twists) // 2

    @property
    def index(self) -> tuple[int, ...]:
        """Signed band indices b - a mod p."""
        return tuple((b - a) % self.p for a, b, _, _ in self.colours)

    @property
    def seifert(self) -> SeifertData:
        return SeifertData(IntMatrix.from_rows(band_matrix(self.twists, self.linking), len(self.twists)))

    @property
    def coloured(self) -> ColouredSeifert:
        v = ModPVector(self.p, self.index)
        if v.is_zero():
            raise NotColourableError("every band has index 0: the colouring is trivial")
        return ColouredSeifert(self.seifert, self.p, v)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "twists": list(self.twists),
            "linking": [list(r) for r in self.linking],
            "colours": [list(c) for c in self.colours],
        }


def random_presentation(
    p: int,
    genus: int,
    rng: random.Random,
    max_twist: int = 9,
    max_link: int = 3,
    zero_rate: float = 0.2,
) -> BandPresentation:
    """A random non-trivially coloured presentation.

    Colours come first; a linking entry is then solved for every index-0 band
    so that its row of M + M^T vanishes mod p, and twists are solved (mod p)
    for the other bands.
    """
    check_prime(p)
    if 2 * max_link + 1 < p or max_twist < (p - 1) // 2:
        raise ValueError("bounds too tight to solve for a colouring")
    n = 2 * genus
    while True:
        v = [0 if rng.random() < zero_rate else rng.randrange(1, p) for _ in range(n)]
        if any(v):
            break
    link = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            link[i][j] = link[j][i] = rng.randint(-max_link, max_link)
    half = pow(2, -1, p)

    def sym(i, j):
        # entry of M + M^T off the diagonal
        return 2 * link[i][j] + (1 if i // 2 == j // 2 else 0)

    for i in range(n):
        if v[i]:
            continue
        j = rng.choice([k for k in range(n) if v[k]])
        rest = sum(sym(i, k) * v[k] for k in range(n) if k not in (i, j))
        target = -rest * pow(v[j], -1, p) % p
        # solve sym(i, j) = target mod p with the smallest |link|
        base = 1 if i // 2 == j // 2 else 0
        x = (target - base) * half % p
        x = x - p if x > p // 2 else x
        link[i][j] = link[j][i] = x

    twists = []
    for i in range(n):
        if v[i]:
            rest = sum(sym(i, k) * v[k] for k in range(n) if k != i)
            t = -rest * pow(2 * v[i], -1, p) % p
            choices = [t + k * p for k in range(-max_twist // p - 1, max_twist // p + 2)]
            twists.append(rng.choice([x for x in choices if abs(x) <= max_twist]))
        else:
            twists.append(rng.randint(-max_twist, max_twist))
    colours = []
    for x in v:
        a, c = rng.randrange(p), rng.randrange(p)
        colours.append((a, a + x, c, c + x))
    return BandPresentation.of(p, twists, link, colours)
