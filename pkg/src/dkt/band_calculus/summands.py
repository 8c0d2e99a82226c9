"""Connect-summand tokens and the multisets the reducer accumulates."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

from ..coloured_invariant import ColouredSeifert, cu, reference
from ..errors import ValidationError
from ..seifert import mirror_seifert, smn

__all__ = ["SmnToken", "TorusToken", "Token", "SummandMultiset", "torus_tokens", "TORUS_WEIGHTS"]


@dataclass(frozen=True, order=True)
class SmnToken:
    """S(m, n) carrying the colouring vector v = (v_A, v_B)."""

    p: int
    m: int
    n: int
    v: tuple[int, int]

    def coloured(self) -> ColouredSeifert:
        return ColouredSeifert.of(smn(self.m, self.n), self.p, self.v)

    def cu(self) -> int:
        return cu(self.coloured()).value

    def __str__(self) -> str:
        return f"S({self.m},{self.n})[v={self.v[0]},{self.v[1]}]"


@dataclass(frozen=True, order=True)
class TorusToken:
    """(p,2)-torus knot coloured by d times the reference vector.

    ``orbit`` is d up to sign: 1 is the reference colouring (orbit A) and for
    p = 5, 2 is the other scaling orbit (orbit B).
    """

    p: int
    handedness: str
    orbit: int = 1

    def __post_init__(self):
        if self.handedness not in ("left", "right"):
            raise ValidationError(f"bad handedness {self.handedness!r}")
        if not 1 <= self.orbit <= (self.p - 1) // 2:
            raise ValidationError(f"orbit {self.orbit} out of range for p={self.p}")

    def coloured(self) -> ColouredSeifert:
        ref = reference(self.p)
        c = ColouredSeifert(ref.seifert, self.p, ref.v.scale(self.orbit))
        if self.handedness == "right":
            c = ColouredSeifert(mirror_seifert(c.seifert), self.p, c.v)
        return c

    def cu(self) -> int:
        return cu(self.coloured()).value

    @property
    def mirror(self) -> TorusToken:
        return TorusToken(self.p, "right" if self.handedness == "left" else "left", self.orbit)

    def __str__(self) -> str:
        base = f"{self.p}_1{'L' if self.handedness == 'left' else 'R'}"
        return base if self.p == 3 else f"{base}({'AB'[self.orbit - 1]})"


Token = Union[SmnToken, TorusToken]


def torus_tokens(p: int) -> list[TorusToken]:
    return [TorusToken(p, h, d) for h in ("left", "right") for d in range(1, (p - 1) // 2 + 1)]


# Each torus token as a number of reference (left, orbit A) torus knots.
TORUS_WEIGHTS = {
    3: {("left", 1): 1, ("right", 1): 2},
    5: {("left", 1): 1, ("left", 2): 4, ("right", 1): 9, ("right", 2): 11},
}


@dataclass
class SummandMultiset:
    p: int
    counts: Counter = field(default_factory=Counter)

    @classmethod
    def of(cls, p: int, tokens: Iterable[Token]) -> SummandMultiset:
        return cls(p, Counter(tokens))

    def add(self, token: Token, k: int = 1) -> None:
        if token.p != self.p:
            raise ValidationError(f"token for p={token.p} added to a p={self.p} multiset")
        if k < 0 or self.counts[token] + k < 0:
            raise ValidationError("multiplicities must stay non-negative")
        self.counts[token] += k

    def __or__(self, other: SummandMultiset) -> SummandMultiset:
        if other.p != self.p:
            raise ValidationError("modulus mismatch")
        return SummandMultiset(self.p, self.counts + other.counts)

    def tokens(self) -> list[Token]:
        return sorted(
            (t for t, k in self.counts.items() for _ in range(k)),
            key=lambda t: (type(t).__name__, t),
        )

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    def is_torus_only(self) -> bool:
        return all(isinstance(t, TorusToken) for t in self.counts)

    def cu(self) -> int:
        return sum(t.cu() * k for t, k in self.counts.items()) % self.p

    def as_dict(self) -> dict[str, int]:
        return {str(t): k for t, k in sorted(self.counts.items(), key=lambda x: str(x[0])) if k}

    def __str__(self) -> str:
        return " # ".join(f"{k}x{t}" if k > 1 else str(t) for t, k in self.as_dict().items()) or "unknot"

