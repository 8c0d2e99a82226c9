"""Independent reference computations used only by the tests.

Nothing here imports the package's algorithms: PD codes are read as plain
tuples, linear algebra goes through sympy or exhaustive search.
"""

from itertools import product

import numpy as np
import sympy as sp

A, t = sp.symbols("A t")


def wirtinger_arcs(crossings):
    """edge -> arc id, joining the two over-edges (positions 1 and 3) of each crossing."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for a, b, c, d in crossings:
        find(a), find(c)
        parent[find(b)] = find(d)
    roots = sorted({find(e) for x in crossings for e in x})
    ids = {r: k for k, r in enumerate(roots)}
    return {e: ids[find(e)] for x in crossings for e in x}, len(roots)


def brute_force_colourings(crossings, p):
    """Count labelings of Wirtinger arcs by Z/p with 2*over = in + out everywhere."""
    arc, n = wirtinger_arcs(crossings)
    labels = np.array(list(product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)
    ok = np.ones(len(labels), dtype=bool)
    for a, b, c, _ in crossings:
        ok &= (2 * labels[:, arc[b]] - labels[:, arc[a]] - labels[:, arc[c]]) % p == 0
    return int(ok.sum())


def crossing_signs(crossings):
    """Sign of each crossing from a walk along the knot (edges numbered along it)."""
    n = 2 * len(crossings)
    out = []
    for _, b, _, d in crossings:
        # the over strand runs d -> b when b follows d in the numbering
        out.append(1 if (b - d) % n == 1 else -1)
    return out


def jones(crossings):
    """Jones polynomial in t from the Kauffman bracket state sum."""
    total = 0
    for state in product((0, 1), repeat=len(crossings)):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        for (a, b, c, d), s in zip(crossings, state):
            pairs = ((a, b), (c, d)) if s == 0 else ((a, d), (b, c))
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(e) for x in crossings for e in x})
        k = state.count(0)
        total += A ** (k - (len(state) - k)) * (-(A**2) - A**-2) ** (loops - 1)
    w = sum(crossing_signs(crossings))
    return sp.expand(sp.expand((-(A**3)) ** (-w) * total).subs(A, t ** sp.Rational(-1, 4)))


LEFT_TREFOIL_JONES = -(t**-4) + t**-3 + t**-1


def alexander_from_pd(crossings):
    """Normalised Alexander polynomial coefficients via the Fox free calculus."""
    arc, n = wirtinger_arcs(crossings)
    rows = []
    for (a, b, c, _), s in zip(crossings, crossing_signs(crossings)):
        r = [0] * n
        r[arc[b]] += 1 - t
        if s > 0:
            r[arc[a]] += t
            r[arc[c]] -= 1
        else:
            r[arc[c]] += t
            r[arc[a]] -= 1
        rows.append(r)
    m = sp.Matrix(rows)[1:, 1:]
    return normalise(m.det() if n > 1 else sp.Integer(1))


def alexander_from_seifert(rows):
    if not rows:
        return (1,)
    m = sp.Matrix(rows)
    return normalise((m - t * m.T).det())


def normalise(poly):
    c = sp.Poly(sp.expand(poly), t).all_coeffs()
    while c and c[-1] == 0:
        c.pop()
    if c and c[0] < 0:
        c = [-x for x in c]
    return tuple(int(x) for x in c)


def signature(rows):
    if not rows:
        return 0
    s = np.array(rows, dtype=float)
    ev = np.linalg.eigvalsh(s + s.T)
    return int((ev > 1e-9).sum() - (ev < -1e-9).sum())


def sympy_det(rows):
    return int(sp.Matrix(rows).det()) if rows else 1


def sympy_snf(rows):
    from sympy.matrices.normalforms import smith_normal_form

    m = smith_normal_form(sp.Matrix(rows), domain=sp.ZZ)
    return tuple(abs(int(m[i, i])) for i in range(min(m.shape)))


def brute_force_kernel(rows, p):
    """All vectors v in (Z/p)^n with (M + M^T) v = 0, by exhaustion."""
    n = len(rows)
    s = [[rows[i][j] + rows[j][i] for j in range(n)] for i in range(n)]
    return [
        v
        for v in product(range(p), repeat=n)
        if all(sum(s[i][j] * v[j] for j in range(n)) % p == 0 for i in range(n))
    ]


def cu_oracle(rows, v, p):
    """2 v^T M v / p mod p on the 0..p-1 lift (the alternative form of the formula)."""
    n = len(rows)
    v = [x % p for x in v]
    q = sum(v[i] * rows[i][j] * v[j] for i in range(n) for j in range(n))
    assert (2 * q) % p == 0
    return (2 * q // p) % p


def block_sum(*mats):
    n = sum(len(m) for m in mats)
    out = [[0] * n for _ in range(n)]
    k = 0
    for m in mats:
        for i, r in enumerate(m):
            for j, x in enumerate(r):
                out[k + i][k + j] = x
        k += len(m)
    return out
