"""Fox p-colourings and the knot determinant of a PD diagram."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .exact_algebra import IntMatrix, check_prime, det_integer, kernel_mod_p
from .knot_codec import PDCode, _UnionFind

__all__ = [
    "Coloring",
    "arcs",
    "coloring_matrix",
    "colorings",
    "count_colorings",
    "is_colorable",
    "determinant",
]


@dataclass(frozen=True)
class Coloring:
    """Labels in Z/p for each Wirtinger arc (indexed as in :func:`arcs`)."""

    p: int
    labels: tuple[int, ...]

    @property
    def nontrivial(self) -> bool:
        return len(set(self.labels)) > 1

    def edge_labels(self, pd: PDCode) -> dict[int, int]:
        """Expand arc labels to every PD edge label."""
        arc_of, _ = arcs(pd)
        return {e: self.labels[a] for e, a in arc_of.items()}


def arcs(pd: PDCode) -> tuple[dict[int, int], int]:
    """Group PD edges into over-arcs: returns (edge -> arc index, arc count).

    Arcs are numbered by their smallest edge label so the numbering is stable.
    """
    uf = _UnionFind()
    for a, b, c, d in pd.crossings:
        uf.find(a)
        uf.find(c)
        uf.union(b, d)
    roots: dict = {}
    for e in sorted(range(1, pd.arc_count + 1)):
        roots.setdefault(uf.find(e), len(roots))
    return {e: roots[uf.find(e)] for e in range(1, pd.arc_count + 1)}, len(roots)


def coloring_matrix(pd: PDCode) -> IntMatrix:
    """One row per crossing: 2*over - under_in - under_out."""
    arc_of, n = arcs(pd)
    rows = []
    for a, b, c, _ in pd.crossings:
        row = [0] * n
        row[arc_of[b]] += 2
        row[arc_of[a]] -= 1
        row[arc_of[c]] -= 1
        rows.append(row)
    return IntMatrix.from_rows(rows, n)


def colorings(pd: PDCode, p: int) -> list[Coloring]:
    """Every colouring mod p (trivial ones included), in lexicographic order of
    their coordinates in the kernel basis."""
    check_prime(p)
    basis = kernel_mod_p(coloring_matrix(pd), p)
    n = arcs(pd)[1]
    out = []
    for coeffs in product(range(p), repeat=len(basis)):
        labels = [0] * n
        for c, v in zip(coeffs, basis):
            if c:
                labels = [(x + c * y) % p for x, y in zip(labels, v)]
        out.append(Coloring(p, tuple(labels)))
    return out


def count_colorings(pd: PDCode, p: int) -> tuple[int, int]:
    """(total, nontrivial) without materialising the colourings."""
    check_prime(p)
    total = p ** len(kernel_mod_p(coloring_matrix(pd), p))
    return total, total - p


def is_colorable(pd: PDCode, p: int) -> bool:
    return count_colorings(pd, p)[1] > 0


def determinant(pd: PDCode) -> int:
    """|det| of the colouring matrix with its first row and column removed."""
    m = coloring_matrix(pd)
    keep_r = list(range(1, m.nrows))
    keep_c = list(range(1, m.ncols))
    return abs(det_integer(m.submatrix(keep_r, keep_c)))
