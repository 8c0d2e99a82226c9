"""Rewriting of 2-string tangle words for p = 5.

Letters: ``l`` and ``r`` are the two basic coloured tangles, ``t`` is tau and
``T`` is tau^-1. A word carries a count of extracted 5_1 summands ``x`` (the
knot coloured as the tangle's strands) and ``xbar`` (its mirror). With d = 0
the extracted knots are trivially coloured and are dropped.

The rule set is completed so that normal forms are exactly t^k # x X with
0 <= k, x < 5. The termination measure is, lexicographically,
(#l + #r, #T, #t, xbar, x).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..errors import ParseError, ValidationError
from .summands import SummandMultiset, TorusToken

__all__ = [
    "Rule",
    "RULES",
    "TangleWord",
    "tangle_rewrite",
    "rewrite_steps",
    "weight",
    "critical_pairs",
    "check_termination",
    "check_confluence",
]

_LETTERS = {"l": "l", "r": "r", "t": "t", "τ": "t", "T": "T", "τ⁻¹": "T", "t^-1": "T", "1": "", "𝟙": ""}


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: str
    rhs: str
    x: int = 0
    xbar: int = 0


RULES = (
    Rule("l2", "ll", "rt"),
    Rule("r2", "rr", "lT"),
    Rule("l2t", "llt", "", x=1),
    Rule("r2T", "rrT", "", xbar=1),
    Rule("l-elim", "l", "tt", xbar=1),
    Rule("r-elim", "r", "TT", x=1),
    Rule("cancel", "tT", ""),
    Rule("cancel", "Tt", ""),
    Rule("tau5", "ttttt", "", x=2, xbar=4),
    Rule("T-expand", "T", "tttt", x=3, xbar=1),
)
# token rules: xbar -> 4x, and 5x -> nothing


@dataclass(frozen=True)
class TangleWord:
    word: str
    d: int
    x: int = 0
    xbar: int = 0

    def __post_init__(self):
        if self.d not in (0, 1, 2):
            raise ValidationError(f"colour difference must be 0, 1 or 2, got {self.d}")
        if set(self.word) - set("lrtT"):
            raise ValidationError(f"bad letters in {self.word!r}")
        if self.x < 0 or self.xbar < 0:
            raise ValidationError("summand counts must be non-negative")
        if self.d == 0 and (self.x or self.xbar):
            object.__setattr__(self, "x", 0)
            object.__setattr__(self, "xbar", 0)

    @classmethod
    def parse(cls, text: str, d: int) -> TangleWord:
        """Whitespace-separated letters: l, r, t or τ, T or τ⁻¹; 1 is the trivial tangle."""
        out = []
        pos = 0
        for tok in text.split():
            pos = text.index(tok, pos)
            if tok not in _LETTERS:
                raise ParseError(f"unknown tangle letter {tok!r}", pos)
            out.append(_LETTERS[tok])
        return cls("".join(out), d)

    def summands(self) -> SummandMultiset:
        ms = SummandMultiset(5)
        if self.d:
            ms.add(TorusToken(5, "left", self.d), self.x)
            ms.add(TorusToken(5, "right", self.d), self.xbar)
        return ms

    def measure(self) -> tuple[int, ...]:
        w = self.word
        return (w.count("l") + w.count("r"), w.count("T"), w.count("t"), self.xbar, self.x)

    def is_normal(self) -> bool:
        return set(self.word) <= {"t"} and len(self.word) < 5 and self.xbar == 0 and self.x < 5

    def __str__(self) -> str:
        w = " ".join({"t": "τ", "T": "τ⁻¹"}.get(c, c) for c in self.word) or "𝟙"
        extra = []
        if self.x:
            extra.append(f"{self.x}x(5_1,ρ{self.d})")
        if self.xbar:
            extra.append(f"{self.xbar}x(5_1bar,ρ{self.d})")
        return " # ".join([w] + extra)


def _successors(t: TangleWord):
    """Every single rewrite of ``t``, as (rule name, position, result)."""
    w = t.word
    for r in RULES:
        start = w.find(r.lhs)
        while start != -1:
            yield r.name, start, TangleWord(w[:start] + r.rhs + w[start + len(r.lhs):], t.d, t.x + r.x, t.xbar + r.xbar)
            start = w.find(r.lhs, start + 1)
    if t.xbar:
        yield "xbar", -1, TangleWord(w, t.d, t.x + 4, t.xbar - 1)
    if t.x >= 5:
        yield "x5", -1, TangleWord(w, t.d, t.x - 5, t.xbar)


def rewrite_steps(t: TangleWord):
    """Leftmost-first strategy: yields (rule, position, new word) until normal."""
    while True:
        nxt = next(iter(_successors(t)), None)
        if nxt is None:
            return
        t = nxt[2]
        yield nxt


def tangle_rewrite(t: TangleWord) -> TangleWord:
    return _rewrite(t)


@lru_cache(maxsize=None)
def _rewrite(t: TangleWord) -> TangleWord:
    for _, _, t in rewrite_steps(t):
        pass
    return t


def weight(t: TangleWord) -> int:
    """Invariant of every rule.

    For d != 0 it lives in Z/25 with c = 4 d^2 the cu of (5_1, rho_d):
    l = c, r = -c, tau = 3c, x = 5c, xbar = -5c. For d = 0 it is the tau
    exponent class 2#l - 2#r + #t - #T in Z/5.
    """
    w = t.word
    nl, nr, nt, nT = (w.count(ch) for ch in "lrtT")
    if t.d == 0:
        return (2 * nl - 2 * nr + nt - nT) % 5
    c = 4 * t.d * t.d % 5
    return c * (nl - nr + 3 * (nt - nT) + 5 * (t.x - t.xbar)) % 25


def _tokens_normal(t: TangleWord) -> TangleWord:
    # the token rules alone are confluent and commute with the word rules
    return TangleWord(t.word, t.d, (t.x + 4 * t.xbar) % 5, 0)


@lru_cache(maxsize=None)
def _normal_forms(t: TangleWord) -> frozenset:
    """All normal forms reachable from a token-normalised state by any path."""
    succ = [s for s in _successors(t) if s[0] not in ("xbar", "x5")]
    if not succ:
        return frozenset([t])
    out = set()
    m = t.measure()
    for _, _, s in succ:
        if not s.measure()[:3] < m[:3]:
            raise AssertionError(f"measure does not decrease: {t} -> {s}")
        out |= _normal_forms(_tokens_normal(s))
    return frozenset(out)


def critical_pairs() -> list[tuple[str, str, str, bool]]:
    """Overlaps of rule left-hand sides, each with whether its two one-step
    rewrites reach the same normal form: (overlap, rule, rule, joinable)."""
    out = []
    for d in (0, 1, 2):
        for r1 in RULES:
            for r2 in RULES:
                words = set()
                if r1 is not r2 and r2.lhs in r1.lhs:
                    words.add(r1.lhs)
                for k in range(1, min(len(r1.lhs), len(r2.lhs))):
                    if r1.lhs[-k:] == r2.lhs[:k]:
                        words.add(r1.lhs + r2.lhs[k:])
                for w in sorted(words):
                    t = TangleWord(w, d)
                    nfs = {tangle_rewrite(s) for name, _, s in _successors(t) if name in (r1.name, r2.name)}
                    out.append((f"{w}/d={d}", r1.name, r2.name, len(nfs) == 1))
    return out


def check_termination() -> bool:
    """Every rule strictly lowers the measure, whatever surrounds it."""
    for r in RULES:
        a, b = TangleWord(r.lhs, 1), TangleWord(r.rhs, 1, r.x, r.xbar)
        if not b.measure() < a.measure():
            return False
    return True


def check_confluence(max_len: int = 6, all_paths: bool = False) -> dict:
    """Check every word of length <= max_len for each d.

    By default this checks local confluence: every one-step rewrite of the word
    reaches the word's own normal form. With termination that gives
    confluence. ``all_paths`` instead follows every rewrite path to its end,
    which is exponential and meant for short words.
    """
    checked, bad = 0, []
    for d in (0, 1, 2):
        for n in range(max_len + 1):
            for letters in product("lrtT", repeat=n):
                t = TangleWord("".join(letters), d)
                nf = tangle_rewrite(t)
                if all_paths:
                    nfs = _normal_forms(t)
                else:
                    nfs = {_tokens_normal(tangle_rewrite(s)) for _, _, s in _successors(t)} or {nf}
                checked += 1
                if nfs != {nf} or not nf.is_normal() or weight(nf) != weight(t):
                    bad.append((str(t), sorted(map(str, nfs))))
    return {"checked": checked, "non_confluent": bad, "terminating": check_termination()}
