"""Integer homology of the quotient cell complex.

Smith normal form is done by hand with Python integers so that no entry can
overflow; the matrices involved are tiny.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .perm import EDGE_INDEX, EDGE_VERTS
from .skeleton import Skeleton


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/t1 + ... + Z/tk`` with ``t1 | t2 | ... | tk`` and every ``ti >= 2``."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in tors):
            raise ValueError("torsion coefficients must be at least 2")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_factors(cls, rank, factors):
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        return cls(rank, tuple(invariant_factors_of(factors)))

    @property
    def order(self):
        """Order of the group, 0 when infinite."""
        return 0 if self.rank else prod(self.torsion)

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def parse(cls, text):
        """Parse ``"Z6"``, ``"Z2+Z2"``, ``"Z"``, ``"0"`` and similar spellings."""
        text = text.replace(" ", "").replace("(+)", "+").replace(",", "+")
        if text in ("", "0", "1"):
            return cls()
        rank, factors = 0, []
        for part in text.split("+"):
            if part == "Z":
                rank += 1
            elif part.startswith("Z_"):
                factors.append(int(part[2:]))
            elif part.startswith("Z"):
                factors.append(int(part[1:]))
            else:
                factors.append(int(part))
        return cls.from_factors(rank, [f for f in factors if f != 1])


def invariant_factors_of(orders):
    """Invariant factors of a direct sum of cyclic groups of the given finite orders."""
    return [d for d in smith_diagonal([[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)]) if d > 1]


def smith_diagonal(matrix):
    """Nonzero diagonal entries of the Smith normal form, each dividing the next."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    r = 0
    while r < m and r < n:
        # choose the smallest nonzero pivot in the remaining block
        best = None
        for i in range(r, m):
            for j in range(r, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        a[r], a[i] = a[i], a[r]
        for row in a:
            row[r], row[j] = row[j], row[r]
        while True:
            p = a[r][r]
            done = True
            for i in range(r + 1, m):
                if a[i][r]:
                    q = a[i][r] // p
                    if q:
                        ar, ai = a[r], a[i]
                        for j in range(r, n):
                            ai[j] -= q * ar[j]
                    if a[i][r]:
                        done = False
            for j in range(r + 1, n):
                if a[r][j]:
                    q = a[r][j] // p
                    if q:
                        for i in range(r, m):
                            a[i][j] -= q * a[i][r]
                    if a[r][j]:
                        done = False
            if done:
                # the pivot must divide the whole remaining block
                bad = None
                for i in range(r + 1, m):
                    for j in range(r + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                ar, ab = a[r], a[bad]
                for j in range(r, n):
                    ar[j] += ab[j]
                continue
            # move the smallest entry of row r / column r to the pivot
            best = (abs(a[r][r]), r, r)
            for i in range(r + 1, m):
                if a[i][r] and abs(a[i][r]) < best[0]:
                    best = (abs(a[i][r]), i, r)
            for j in range(r + 1, n):
                if a[r][j] and abs(a[r][j]) < best[0]:
                    best = (abs(a[r][j]), r, j)
            _, i, j = best
            if i != r:
                a[r], a[i] = a[i], a[r]
            if j != r:
                for row in a:
                    row[r], row[j] = row[j], row[r]
        diag.append(abs(a[r][r]))
        r += 1
    return diag


def boundary_matrices(tri, sk=None):
    """Cellular boundary maps ``d1`` (V x E) and ``d2`` (E x F) of the quotient."""
    sk = sk or Skeleton(tri)
    if sk.reversed_edges():
        raise ValueError("invalid triangulation: an edge is identified with its reverse")
    V, E, F = len(sk.vertices), len(sk.edges), len(sk.faces)
    d1 = [[0] * E for _ in range(V)]
    for c, ec in enumerate(sk.edges):
        t, e = ec.slots[0]
        s = sk.edge_sign[6 * t + e]
        i, j = EDGE_VERTS[e]
        if s < 0:
            i, j = j, i
        d1[sk.vertex_class(t, j)][c] += 1
        d1[sk.vertex_class(t, i)][c] -= 1
    d2 = [[0] * F for _ in range(E)]
    for k, fc in enumerate(sk.faces):
        t, f = fc.slots[0]
        a, b, c = (v for v in range(4) if v != f)
        for (u, v), coef in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            e = EDGE_INDEX[u, v]
            d2[sk.edge_of_slot[6 * t + e]][k] += coef * sk.edge_sign[6 * t + e]
    return d1, d2


def homology_h1(tri, sk=None):
    """First homology of the quotient space."""
    d1, d2 = boundary_matrices(tri, sk)
    E = len(d2)
    r1 = len(smith_diagonal(d1)) if d1 and E else 0
    diag2 = smith_diagonal(d2) if E and d2[0] else []
    rank = E - r1 - len(diag2)
    return AbelianGroup(rank, tuple(d for d in diag2 if d > 1))


def relation_rows(tri, sk=None):
    """Face relations on edge classes: one row per face class, signed, with multiplicity."""
    _, d2 = boundary_matrices(tri, sk)
    E = len(d2)
    F = len(d2[0]) if E else 0
    return [[d2[i][k] for i in range(E)] for k in range(F)]


def edge_labels(tri, sk=None):
    """Integer label of each edge class under an isomorphism ``H1 -> Z``.

    Needs one vertex and ``H1`` infinite cyclic.  The sign is fixed by making the
    first nonzero label positive.
    """
    sk = sk or Skeleton(tri)
    if len(sk.vertices) != 1:
        raise ValueError("edge labels need a one-vertex triangulation")
    h = homology_h1(tri, sk)
    if h.rank != 1 or h.torsion:
        raise ValueError(f"edge labels need H1 = Z, found {h}")
    rows = relation_rows(tri, sk)
    return rational_kernel_line(rows, len(sk.edges))


def _primitive(row):
    g = 0
    for v in row:
        g = gcd(g, v)
    return [v // g for v in row] if g > 1 else row


def rational_kernel_line(rows, n):
    """Primitive integer vector spanning ``{x : r.x = 0 for all rows r}``, which must be a line."""
    # fraction-free reduction; every row stays primitive
    mat = [_primitive(list(r)) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                q = mat[i][c]
                mat[i] = _primitive([pv * x - q * y for x, y in zip(mat[i], mat[r])])
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ValueError(f"kernel has dimension {len(free)}, expected 1")
    fc = free[0]
    # row i reads a * x[c] + b * x[fc] = 0
    den = 1
    for i in range(len(pivots)):
        a = mat[i][pivots[i]]
        den = den * abs(a) // gcd(den, abs(a))
    ints = [0] * n
    ints[fc] = den
    for i, c in enumerate(pivots):
        ints[c] = -mat[i][fc] * den // mat[i][c]
    ints = _primitive(ints)
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return ints


def gf2_kernel(rows, n):
    """Basis of ``{x in GF(2)^n : r.x = 0 mod 2}`` as lists of 0/1."""
    mat = [[x & 1 for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                mat[i] = [x ^ y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(n) if c not in pivots):
        x = [0] * n
        x[fc] = 1
        for i, c in enumerate(pivots):
            x[c] = mat[i][fc]
        basis.append(x)
    return basis
