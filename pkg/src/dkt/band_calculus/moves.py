"""The reduction pipeline: unlink bands, trade twists for torus summands, convert
the remaining S(m, n) summands and count reference torus knots.

Moves act on (M, v). A surgery along a curve u with u.v = 0 mod p replaces M by
M + eps u u^T; a change of cut system replaces (M, v) by (P^T M P, P^-1 v) for
a symplectic P. Both keep cu fixed, and every step re-evaluates cu of the
whole state to prove it.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable

from ..coloured_invariant import ClassLabel, ColouredSeifert, classify, cu
from ..errors import InconsistencyError, NotColourableError, ValidationError
from ..exact_algebra import IntMatrix, check_prime, kernel_mod_p
from ..seifert import SeifertData, smn
from .presentation import BandPresentation, band_matrix
from .summands import TORUS_WEIGHTS, SmnToken, SummandMultiset, TorusToken, torus_tokens
from .trace import ReductionTrace, digest

__all__ = ["unlink_bands", "twist_reduce", "smn_to_torus", "canonicalize_counts", "reduce", "SUPPORTED_PRIMES"]

SUPPORTED_PRIMES = (3, 5)

REF_EXCISE = "genus reduction: pair of bands with trivial colouring"
REF_RECUT = "change of cut system: index-0 band replaced by a band of nonzero index"
REF_EQUAL = "surgery in ker rho: unlinking bands of equal index"
REF_COPRIME = "surgery in ker rho: unlinking bands of distinct nonzero index"
REF_SPLIT = "unlinked band pairs form a connected sum of S(m,n)"
REF_TWIST = {
    3: "three full twists in a band traded for a trefoil summand",
    5: "five full twists in a band traded for two 5_1 summands",
}
REF_TORUS = "small S(m,n) rewritten as torus-knot summands"


class _Engine:
    """Mutable reduction state: at most one coupled block (M, v), a list of
    S(m, n) summands and a multiset of torus summands."""

    def __init__(self, p: int):
        self.p = p
        self.m: list[list[int]] | None = None
        self.v: list[int] = []
        self.smn: list[SmnToken] = []
        self.torus: Counter = Counter()
        self.trace = ReductionTrace(p)

    def snapshot(self):
        block = None if self.m is None else (tuple(map(tuple, self.m)), tuple(self.v))
        return (block, tuple(self.smn), tuple(sorted((str(t), k) for t, k in self.torus.items() if k)))

    def cu(self) -> int:
        total = 0
        if self.m is not None and any(self.v):
            s = SeifertData(IntMatrix.from_rows(self.m, len(self.v)))
            total += cu(ColouredSeifert.of(s, self.p, self.v)).value
        total += sum(t.cu() for t in self.smn if t is not None)
        total += sum(t.cu() * k for t, k in self.torus.items())
        return total % self.p

    def step(self, move: str, ref: str, mutate: Callable[[], None], detail: str = "") -> None:
        before, c0 = digest(self.snapshot()), self.cu()
        mutate()
        self.trace.record(move, ref, before, digest(self.snapshot()), c0, self.cu(), detail)

    # -- band stage ---------------------------------------------------------

    def _surgery(self, i: int, j: int, beta: int, eps: int) -> None:
        u = {i: 1, j: beta}
        for a, x in u.items():
            for b, y in u.items():
                self.m[a][b] += eps * x * y

    def _excise(self, k: int) -> None:
        keep = [i for i in range(len(self.v)) if i // 2 != k]
        self.m = [[self.m[i][j] for j in keep] for i in keep]
        self.v = [self.v[i] for i in keep]

    def _recut(self, src: int, dst: int) -> None:
        # P = I + E[src][dst]: basis vector dst becomes x_dst + x_src
        n = len(self.v)
        for r in range(n):
            self.m[r][dst] += self.m[r][src]
        self.m[dst] = [x + y for x, y in zip(self.m[dst], self.m[src])]
        self.v[src] = (self.v[src] - self.v[dst]) % self.p

    def unlink(self) -> None:
        p = self.p
        k = 0
        while k < len(self.v) // 2:
            if self.v[2 * k] == 0 and self.v[2 * k + 1] == 0:
                self.step("excise-pair", REF_EXCISE, lambda k=k: self._excise(k), f"pair {k}")
            else:
                k += 1
        for k in range(len(self.v) // 2):
            a, b = 2 * k, 2 * k + 1
            if self.v[b] == 0:
                self.step("recut", REF_RECUT, lambda: self._recut(b, a), f"band {b}")
            elif self.v[a] == 0:
                self.step("recut", REF_RECUT, lambda: self._recut(a, b), f"band {a}")
        n = len(self.v)
        for i in range(n):
            for j in range(i + 1, n):
                self._unlink_pair(i, j, p)

    def _unlink_pair(self, i: int, j: int, p: int) -> None:
        # the entry to clear; inside a pair it is the extra linking M[j][i]
        def excess() -> int:
            return self.m[j][i]

        if excess() == 0:
            return
        ratio = self.v[i] * pow(self.v[j], -1, p) % p
        b = -ratio % p
        if ratio in (1, p - 1):
            beta = -1 if ratio == 1 else 1
            while excess():
                eps = -1 if excess() * beta > 0 else 1
                self.step("unlink-equal", REF_EQUAL, lambda e=eps: self._surgery(i, j, beta, e), f"bands {i},{j}")
            return
        x, y = _two_term_bezout(b, b - p, -excess())
        for beta, times in ((b, x), (b - p, y)):
            eps = 1 if times > 0 else -1
            for _ in range(abs(times)):
                self.step(
                    "unlink-coprime", REF_COPRIME, lambda be=beta, e=eps: self._surgery(i, j, be, e), f"bands {i},{j}"
                )
        if excess():
            raise InconsistencyError("unlinking left residual linking")

    def split(self) -> None:
        def go():
            for k in range(0, len(self.v), 2):
                self.smn.append(SmnToken(self.p, self.m[k][k], self.m[k + 1][k + 1], (self.v[k], self.v[k + 1])))
            self.m, self.v = None, []

        for i, row in enumerate(self.m):
            for j, x in enumerate(row):
                if i != j and x != (1 if j == i + 1 and i % 2 == 0 else 0):
                    raise InconsistencyError("split requested before the bands are unlinked")
        if len(self.v) == 2:
            go()  # a single pair is already an S(m,n); nothing to record
            return
        self.step("split", REF_SPLIT, go, f"{len(self.v) // 2} summands")

    # -- summand stage ------------------------------------------------------

    def twist_reduce(self, idx: int) -> None:
        p = self.p
        half = (p - 1) // 2
        while True:
            t = self.smn[idx]
            if abs(t.m) > half:
                pos, vi = 0, t.v[0]
                s = 1 if t.m > 0 else -1
            elif abs(t.n) > half:
                pos, vi = 1, t.v[1]
                s = 1 if t.n > 0 else -1
            else:
                return
            copies = 1 if p == 3 else 2
            need = 2 * s * vi * vi * pow(copies, -1, p) % p
            hand = "left" if s > 0 else "right"
            tok = next((c for c in torus_tokens(p) if c.handedness == hand and c.cu() == need), None)
            if tok is None:
                raise InconsistencyError(f"no {hand} torus summand with cu {need}")
            new = SmnToken(p, t.m - s * p, t.n, t.v) if pos == 0 else SmnToken(p, t.m, t.n - s * p, t.v)

            def go(new=new, tok=tok):
                self.smn[idx] = new
                self.torus[tok] += copies

            self.step("twist-shift", REF_TWIST[p], go, f"{t} -> {new} + {copies}x{tok}")

    def to_torus(self, idx: int) -> None:
        t = self.smn[idx]
        ms = smn_to_torus(t)

        def go():
            self.smn[idx] = None
            self.torus.update(ms.counts)

        self.step("torus-conversion", REF_TORUS, go, f"{t} -> {ms}")


def _two_term_bezout(a: int, b: int, target: int) -> tuple[int, int]:
    """Small (x, y) with a x + b y = target, for coprime a and b."""
    old_r, r, old_s, s = a, b, 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    g = old_r
    x0 = old_s * target // g
    y0 = (target - a * x0) // b
    # shift along (b, -a)/g to minimise the number of moves
    best = min(
        ((x0 + k * b // g, y0 - k * a // g) for k in range(-abs(x0) - 2, abs(x0) + 3)),
        key=lambda xy: abs(xy[0]) + abs(xy[1]),
    )
    assert a * best[0] + b * best[1] == target
    return best


def _require_supported(p: int) -> None:
    check_prime(p)
    if p not in SUPPORTED_PRIMES:
        raise ValidationError(f"the reduction is only available for p in {SUPPORTED_PRIMES}, got {p}")


def unlink_bands(b: BandPresentation) -> tuple[list[SmnToken], ReductionTrace]:
    b.coloured  # rejects the trivial colouring
    e = _Engine(b.p)
    e.m = band_matrix(b.twists, b.linking)
    e.v = list(b.index)
    e.unlink()
    e.split()
    return list(e.smn), e.trace


def twist_reduce(t: SmnToken) -> tuple[SmnToken, list[TorusToken], ReductionTrace]:
    _require_supported(t.p)
    e = _Engine(t.p)
    e.smn = [t]
    e.twist_reduce(0)
    return e.smn[0], sorted(e.torus.elements()), e.trace


def smn_to_torus(t: SmnToken) -> SummandMultiset:
    p = t.p
    _require_supported(p)
    half = (p - 1) // 2
    if (4 * t.m * t.n - 1) % p:
        raise NotColourableError(f"S({t.m},{t.n}) is not {p}-colourable")
    if abs(t.m) > half or abs(t.n) > half:
        raise ValidationError(f"S({t.m},{t.n}) has twists outside [-{half},{half}]; twist_reduce first")
    target = t.cu()
    out = SummandMultiset(p)
    if p == 3:
        out.add(TorusToken(3, "left" if t.m > 0 else "right"))
    elif (t.m, t.n) in ((-1, 1), (1, -1)):
        hand = "left" if t.m < 0 else "right"
        for x, y in ((1, 2), (2, 1)):
            X, Y = TorusToken(5, hand, x), TorusToken(5, hand, y)
            if (X.cu() + 4 * Y.cu()) % 5 == target:
                out.add(X)
                out.add(Y, 4)
                break
    else:
        # S(2,2) = S(-1,1) # one left 5_1, and mirror
        hand = "left" if t.m > 0 else "right"
        inner = (-1, 1) if t.m > 0 else (1, -1)
        base = kernel_mod_p(smn(*inner).symmetrized, 5)[0]
        for c in range(1, 5):
            w = SmnToken(5, *inner, tuple(base.scale(c)))
            tok = next((k for k in torus_tokens(5) if k.handedness == hand and (w.cu() + k.cu()) % 5 == target), None)
            if tok is not None:
                out = smn_to_torus(w)
                out.add(tok)
                break
    if not out.size or out.cu() != target:
        raise InconsistencyError(f"no cu-consistent torus summands for {t}")
    return out


def canonicalize_counts(ms: SummandMultiset) -> ClassLabel:
    """Total number of reference torus knots, reduced into 1..p."""
    _require_supported(ms.p)
    if not ms.is_torus_only():
        raise ValidationError("only torus summands can be counted")
    if not ms.size:
        raise NotColourableError("empty connected sum: the unknot has no nontrivial colouring")
    table = TORUS_WEIGHTS[ms.p]
    total = sum(table[(t.handedness, t.orbit)] * k for t, k in ms.counts.items())
    return ClassLabel(ms.p, total % ms.p or ms.p)


def reduce(b: BandPresentation) -> tuple[ClassLabel, ReductionTrace]:
    """Full pipeline; the result is checked against :func:`classify`."""
    _require_supported(b.p)
    expected = classify(b.coloured)
    e = _Engine(b.p)
    e.m = band_matrix(b.twists, b.linking)
    e.v = list(b.index)
    e.unlink()
    e.split()
    for i in range(len(e.smn)):
        e.twist_reduce(i)
    for i in range(len(e.smn)):
        e.to_torus(i)
    e.smn = [t for t in e.smn if t is not None]
    label = canonicalize_counts(SummandMultiset(b.p, +e.torus))
    if label.n != expected.n:
        raise InconsistencyError(f"reduction gave n={label.n}, invariant gives n={expected.n}")
    return label, e.trace
