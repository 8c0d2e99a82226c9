"""Knot presentations: PD codes, braid words and directly supplied Seifert matrices.

PD convention: each crossing ``X(a,b,c,d)`` lists its four edges counterclockwise
starting at the incoming under-strand, so the under-strand runs ``a -> c`` and the
over-strand joins ``b`` and ``d``. The crossing is positive when the over-strand
runs ``d -> b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError, ValidationError
from .exact_algebra import IntMatrix

__all__ = [
    "PDCode",
    "BraidWord",
    "SeifertDirect",
    "KnotPresentation",
    "parse_pd",
    "format_pd",
    "parse_braid",
    "format_braid",
    "parse_seifert_text",
    "format_seifert_text",
    "braid_to_pd",
    "smn_pd",
    "mirror",
    "catalog",
    "catalog_diagram",
    "CATALOG_NAMES",
]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        _validate_pd(self.crossings)

    @property
    def arc_count(self) -> int:
        """Number of edge labels (two per crossing)."""
        return 2 * len(self.crossings)

    def over_directions(self) -> tuple[bool, ...]:
        """For each crossing, True when the over-strand runs d -> b."""
        return _orient(self.crossings)

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if d_to_b else -1 for d_to_b in self.over_directions())

    def writhe(self) -> int:
        return sum(self.signs())

    def __str__(self) -> str:
        return format_pd(self)


def _validate_pd(crossings) -> None:
    if not crossings:
        raise ValidationError("a PD code needs at least one crossing")
    counts: dict[int, int] = {}
    for x in crossings:
        if len(x) != 4:
            raise ValidationError(f"crossing {x} does not have four edges")
        for e in x:
            counts[e] = counts.get(e, 0) + 1
    n = len(counts)
    if sorted(counts) != list(range(1, n + 1)):
        raise ValidationError("edge labels must be contiguous 1..arc_count")
    once = [e for e, k in counts.items() if k != 2]
    if once:
        raise ValidationError(f"edge {once[0]} must appear exactly twice")
    uf = _UnionFind()
    for a, b, c, d in crossings:
        uf.union(a, c)
        uf.union(b, d)
    if len({uf.find(e) for e in counts}) != 1:
        raise ValidationError("diagram has more than one component (links are not supported)")
    _orient(crossings)


def _orient(crossings) -> tuple[bool, ...]:
    where: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(crossings):
        for pos, e in enumerate(x):
            where.setdefault(e, []).append((i, pos))
    d_to_b: list[bool | None] = [None] * len(crossings)
    i, pos = 0, 0
    for _ in range(2 * len(crossings)):
        out_pos = (pos + 2) % 4
        edge = crossings[i][out_pos]
        i, pos = next(o for o in where[edge] if o != (i, out_pos))
        if pos == 2:
            raise ValidationError(f"edge {edge} leaves crossing {i + 1} along its under-strand twice")
        if pos in (1, 3):
            d_to_b[i] = pos == 3
    if (i, pos) != (0, 0) or None in d_to_b:
        raise ValidationError("traversal does not close into a single oriented component")
    return tuple(d_to_b)


_PD_TOKEN = re.compile(r"X\(([^()]*)\)")


def parse_pd(text: str) -> PDCode:
    """Parse whitespace separated ``X(a,b,c,d)`` tokens."""
    crossings = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _PD_TOKEN.match(text, pos)
        if m is None:
            raise ParseError("expected a crossing of the form X(a,b,c,d)", pos)
        fields = [f.strip() for f in m.group(1).split(",")]
        if len(fields) != 4:
            raise ParseError(f"crossing has {len(fields)} entries, expected 4", pos)
        try:
            crossings.append(tuple(int(f) for f in fields))
        except ValueError:
            raise ParseError("crossing entries must be integers", pos) from None
        pos = m.end()
    if not crossings:
        raise ParseError("empty PD code", 0)
    return PDCode(tuple(crossings))


def format_pd(pd: PDCode) -> str:
    return " ".join("X({},{},{},{})".format(*x) for x in pd.crossings)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValidationError("a braid needs at least two strands")
        for x in self.letters:
            if x == 0:
                raise ValidationError("braid letters must be nonzero")
            if abs(x) >= self.strands:
                raise ValidationError(f"letter {x} needs more than {self.strands} strands")
        cycles = self.closure_cycles()
        if len(cycles) != 1:
            raise ValidationError(
                f"braid closure has {len(cycles)} components (links are not supported)"
            )

    def permutation(self) -> tuple[int, ...]:
        """perm[k] = final position of the strand starting at position k."""
        pos = list(range(self.strands))  # pos[position] = strand there
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for position, strand in enumerate(pos):
            perm[strand] = position
        return tuple(perm)

    def closure_cycles(self) -> list[tuple[int, ...]]:
        perm = self.permutation()
        seen, cycles = set(), []
        for start in range(self.strands):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = perm[k]
            cycles.append(tuple(cyc))
        return cycles

    def __str__(self) -> str:
        return format_braid(self)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``[n:] i j k ...``; signed letters separated by whitespace or commas."""
    body = text
    if ":" in text:
        head, body = text.split(":", 1)
        try:
            declared = int(head)
        except ValueError:
            raise ParseError("strand count before ':' must be an integer", 0) from None
        if strands is not None and strands != declared:
            raise ParseError("conflicting strand counts", 0)
        strands = declared
    letters = []
    offset = len(text) - len(body)
    for m in re.finditer(r"[^\s,]+", body):
        try:
            letters.append(int(m.group()))
        except ValueError:
            raise ParseError(f"bad braid letter {m.group()!r}", offset + m.start()) from None
    if not letters:
        raise ValidationError("empty braid word (the unknot has no crossings to encode)")
    if strands is None:
        strands = max(abs(x) for x in letters) + 1
    return BraidWord(strands, tuple(letters))


def format_braid(b: BraidWord) -> str:
    return f"{b.strands}: " + " ".join(str(x) for x in b.letters)


@dataclass(frozen=True)
class SeifertDirect:
    """A Seifert matrix supplied as-is."""

    matrix: IntMatrix

    def __post_init__(self):
        if not self.matrix.is_square or self.matrix.nrows % 2:
            raise ValidationError("a Seifert matrix must be square of even size")


KnotPresentation = Union[PDCode, BraidWord, SeifertDirect]


def parse_seifert_text(text: str) -> SeifertDirect:
    """Parse ``g; row-major integers`` describing a 2g x 2g matrix."""
    if ";" not in text:
        raise ParseError("expected 'g; entries'", 0)
    head, body = text.split(";", 1)
    try:
        g = int(head)
    except ValueError:
        raise ParseError("genus must be an integer", 0) from None
    if g < 0:
        raise ParseError("genus must be non-negative", 0)
    offset = len(head) + 1
    values = []
    for m in re.finditer(r"[^\s,]+", body):
        try:
            values.append(int(m.group()))
        except ValueError:
            raise ParseError(f"bad matrix entry {m.group()!r}", offset + m.start()) from None
    n = 2 * g
    if len(values) != n * n:
        raise ParseError(f"genus {g} needs {n * n} entries, got {len(values)}", len(text))
    return SeifertDirect(IntMatrix.from_rows((values[i * n:(i + 1) * n] for i in range(n)), n))


def format_seifert_text(s: SeifertDirect) -> str:
    g = s.matrix.nrows // 2
    return f"{g}; " + " ".join(str(x) for r in s.matrix.rows for x in r)


# Cyclic counterclockwise order of the corners of a crossing drawn with both
# strands heading upward: SW, SE, NE, NW.
_SW, _SE, _NE, _NW = range(4)


def _build_pd(crossings) -> PDCode:
    """PD code from crossings given as ``(corner edge ids, over)``.

    ``corners`` holds edge ids at SW, SE, NE, NW; strands run SW-NE and SE-NW;
    ``over`` is the corner pair of the over-strand, ``"SWNE"`` or ``"SENW"``.
    Orientation is fixed by entering the first crossing through its SW corner.
    """
    where: dict = {}
    for i, (corners, _) in enumerate(crossings):
        for pos, e in enumerate(corners):
            where.setdefault(e, []).append((i, pos))
    if any(len(v) != 2 for v in where.values()):
        raise ValidationError("every edge must join exactly two crossing corners")
    incoming = {}
    labels: dict = {}
    i, pos = 0, _SW
    for _ in range(2 * len(crossings)):
        incoming[(i, pos)] = True
        out_pos = (pos + 2) % 4
        edge = crossings[i][0][out_pos]
        labels.setdefault(edge, len(labels) + 1)
        i, pos = next(o for o in where[edge] if o != (i, out_pos))
    if (i, pos) != (0, _SW) or len(labels) != len(where):
        raise ValidationError("diagram has more than one component")
    pd = []
    for i, (corners, over) in enumerate(crossings):
        under = (_SE, _NW) if over == "SWNE" else (_SW, _NE)
        start = under[0] if (i, under[0]) in incoming else under[1]
        pd.append(tuple(labels[corners[(start + k) % 4]] for k in range(4)))
    return PDCode(tuple(pd))


def _strand_diagram(positions: int, letters, bottom, closure) -> PDCode:
    """Stack crossings on vertical strands and close them up.

    ``bottom`` gives the initial edge id at each position. ``closure`` is either
    ``"braid"`` (top of each position joins its bottom) or a list of position
    pairs whose top edges are joined by caps.
    """
    uf = _UnionFind()
    cur = list(bottom)
    raw = []
    for n, x in enumerate(letters):
        i = abs(x) - 1
        nw, ne = ("e", 2 * n), ("e", 2 * n + 1)
        raw.append(([cur[i], cur[i + 1], ne, nw], "SWNE" if x > 0 else "SENW"))
        cur[i], cur[i + 1] = nw, ne
    if closure == "braid":
        for k in range(positions):
            uf.union(cur[k], bottom[k])
    else:
        for a, b in closure:
            uf.union(cur[a], cur[b])
    return _build_pd([([uf.find(e) for e in corners], over) for corners, over in raw])


def braid_to_pd(b: BraidWord) -> PDCode:
    """PD code of the braid closure. Strands run upward; ``+i`` is a positive crossing."""
    return _strand_diagram(b.strands, b.letters, [("b", k) for k in range(b.strands)], "braid")


def smn_pd(m: int, n: int) -> PDCode:
    """Diagram of S(m, n) as a 4-plat: 2|m| half-twists on the middle strands,
    then 2|n| on the left pair, cups (0,1),(2,3) below and caps (0,3),(1,2) above."""
    letters = [2 if m > 0 else -2] * (2 * abs(m)) + [1 if n > 0 else -1] * (2 * abs(n))
    if not letters:
        raise ValidationError("S(0,0) is the unknot and has no PD code")
    bottom = [("cup", 0), ("cup", 0), ("cup", 1), ("cup", 1)]
    return _strand_diagram(4, letters, bottom, [(0, 3), (1, 2)])


def mirror(k: KnotPresentation) -> KnotPresentation:
    """Flip every crossing; Seifert matrices go to -M^T."""
    if isinstance(k, BraidWord):
        return BraidWord(k.strands, tuple(-x for x in k.letters))
    if isinstance(k, SeifertDirect):
        return SeifertDirect(-k.matrix.T)
    if isinstance(k, PDCode):
        out = []
        for (a, b, c, d), d_to_b in zip(k.crossings, k.over_directions()):
            out.append((d, a, b, c) if d_to_b else (b, c, d, a))
        return PDCode(tuple(out))
    raise TypeError(f"not a knot presentation: {type(k).__name__}")


def _bidiagonal(size: int, sign: int) -> IntMatrix:
    return IntMatrix.from_rows(
        [[sign if j in (i, i + 1) else 0 for j in range(size)] for i in range(size)], size
    )


_SMN_NAME = re.compile(r"S\((-?\d+),(-?\d+)\)$")

_SEIFERT_CATALOG = {
    "3_1L": IntMatrix.from_rows([[1, 1], [0, 1]]),
    "3_1R": IntMatrix.from_rows([[-1, 0], [-1, -1]]),
    "4_1": IntMatrix.from_rows([[-1, 1], [0, 1]]),
    "5_1L": _bidiagonal(4, 1),
    "5_1R": -(_bidiagonal(4, 1).T),
}

_BRAID_CATALOG = {
    "3_1L": "2: -1 -1 -1",
    "3_1R": "2: 1 1 1",
    "4_1": "3: 1 -2 1 -2",
    "5_1L": "2: -1 -1 -1 -1 -1",
    "5_1R": "2: 1 1 1 1 1",
    "3_1L#3_1L": "3: -1 -1 -1 -2 -2 -2",
    "3_1L#3_1R": "3: -1 -1 -1 2 2 2",
    "unknot-braid": "3: 1 -2",
}

CATALOG_NAMES = tuple(sorted(set(_SEIFERT_CATALOG) | set(_BRAID_CATALOG))) + ("S(m,n)",)


def catalog(name: str) -> KnotPresentation:
    """Canned presentation: Seifert matrices for named knots and S(m,n), braids otherwise."""
    if name in _SEIFERT_CATALOG:
        return SeifertDirect(_SEIFERT_CATALOG[name])
    m = _SMN_NAME.match(name.replace(" ", ""))
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return SeifertDirect(IntMatrix.from_rows([[a, 1], [0, b]]))
    if name in _BRAID_CATALOG:
        return parse_braid(_BRAID_CATALOG[name])
    raise KeyError(f"unknown catalog knot {name!r}")


def catalog_diagram(name: str) -> PDCode:
    """A PD diagram for a catalog knot (S(m,n) via its 4-plat)."""
    m = _SMN_NAME.match(name.replace(" ", ""))
    if m:
        return smn_pd(int(m.group(1)), int(m.group(2)))
    if name in _BRAID_CATALOG:
        return braid_to_pd(parse_braid(_BRAID_CATALOG[name]))
    raise KeyError(f"no diagram for catalog knot {name!r}")
