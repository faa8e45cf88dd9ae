"""Face-pairing triangulations.

A triangulation is a number of tetrahedra together with, for every face
``(t, f)`` (face ``f`` of tetrahedron ``t`` is the face opposite vertex
``f``), either ``None`` (a boundary face) or a target ``(t2, f2, perm)``
where ``perm`` carries the vertices of face ``f`` onto those of face ``f2``.

Instances are immutable; every operation returns a new triangulation.
"""

from __future__ import annotations

import json

from .perm import IDENTITY, compose, from_digits, inverse, to_digits

FORMAT = "lenstri-tri-v1"


class Triangulation:
    """Tetrahedra plus a face-pairing table.

    The table is stored as given; it is *not* checked on construction so that
    corrupt inputs can be handed to :func:`lenstri.skeleton.validate` for a
    report.  Use :meth:`from_pairs` to build well-formed tables.
    """

    __slots__ = ("_n", "_glue", "_hash")

    def __init__(self, n, gluings=None):
        if n < 0:
            raise ValueError("tetrahedron count must be nonnegative")
        if gluings is None:
            gluings = [[None] * 4 for _ in range(n)]
        if len(gluings) != n:
            raise ValueError(f"expected {n} rows of gluings, got {len(gluings)}")
        rows = []
        for row in gluings:
            if len(row) != 4:
                raise ValueError("each tetrahedron needs exactly four face slots")
            rows.append(
                tuple(None if g is None else (int(g[0]), int(g[1]), tuple(g[2])) for g in row)
            )
        self._n = n
        self._glue = tuple(rows)
        self._hash = None

    @classmethod
    def from_pairs(cls, n, pairs):
        """Build from ``(t, f, t2, perm)`` records, filling in the inverse of each."""
        table = [[None] * 4 for _ in range(n)]
        for t, f, t2, perm in pairs:
            perm = tuple(perm)
            f2 = perm[f]
            if (t, f) == (t2, f2):
                raise ValueError(f"face ({t}, {f}) cannot be glued to itself")
            for a, b in ((t, f), (t2, f2)):
                if table[a][b] is not None:
                    raise ValueError(f"face ({a}, {b}) is glued twice")
            table[t][f] = (t2, f2, perm)
            table[t2][f2] = (t, f, inverse(perm))
        return cls(n, table)

    # -- basic access -------------------------------------------------------

    @property
    def size(self):
        """Number of tetrahedra."""
        return self._n

    def __len__(self):
        return self._n

    @property
    def gluings(self):
        return self._glue

    def adjacent(self, t, f):
        return self._glue[t][f]

    def boundary_faces(self):
        return [(t, f) for t in range(self._n) for f in range(4) if self._glue[t][f] is None]

    def is_closed(self):
        return all(g is not None for row in self._glue for g in row)

    def pairs(self):
        """Each interior gluing once, as ``(t, f, t2, perm)`` with ``(t, f) < (t2, f2)``."""
        out = []
        for t, row in enumerate(self._glue):
            for f, g in enumerate(row):
                if g is not None and (t, f) < (g[0], g[1]):
                    out.append((t, f, g[0], g[2]))
        return out

    def components(self):
        """Tetrahedron index sets of the connected components, sorted."""
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                t = stack.pop()
                comp.append(t)
                for g in self._glue[t]:
                    if g is not None and 0 <= g[0] < self._n and not seen[g[0]]:
                        seen[g[0]] = True
                        stack.append(g[0])
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    # -- derived triangulations --------------------------------------------

    def relabel(self, tet_perm, vertex_perms=None):
        """Isomorphic copy: old tet ``t`` becomes ``tet_perm[t]``, its vertex ``v`` becomes
        ``vertex_perms[t][v]``."""
        n = self._n
        if vertex_perms is None:
            vertex_perms = [IDENTITY] * n
        table = [[None] * 4 for _ in range(n)]
        for t, row in enumerate(self._glue):
            sig = vertex_perms[t]
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, f2, p = g
                sig2 = vertex_perms[t2]
                table[tet_perm[t]][sig[f]] = (tet_perm[t2], sig2[f2], compose(sig2, compose(p, inverse(sig))))
        return Triangulation(n, table)

    def induced(self, tets, keep=None):
        """Sub-triangulation on ``tets`` (in the given order) keeping the gluings among them.

        ``keep(t, f)`` may veto individual gluings; vetoed faces become boundary.
        """
        index = {t: i for i, t in enumerate(tets)}
        table = [[None] * 4 for _ in tets]
        for i, t in enumerate(tets):
            for f, g in enumerate(self._glue[t]):
                if g is None or g[0] not in index:
                    continue
                if keep is not None and not keep(t, f):
                    continue
                table[i][f] = (index[g[0]], g[1], g[2])
        return Triangulation(len(tets), table)

    def disjoint_union(self, other):
        off = self._n
        rows = [list(r) for r in self._glue]
        for row in other._glue:
            rows.append([None if g is None else (g[0] + off, g[1], g[2]) for g in row])
        return Triangulation(off + other._n, rows)

    def with_gluings(self, pairs):
        """Copy with extra ``(t, f, t2, perm)`` gluings (and their inverses) added."""
        table = [list(r) for r in self._glue]
        for t, f, t2, perm in pairs:
            perm = tuple(perm)
            f2 = perm[f]
            if table[t][f] is not None or table[t2][f2] is not None:
                raise ValueError(f"face ({t}, {f}) or ({t2}, {f2}) is already glued")
            if (t, f) == (t2, f2):
                raise ValueError(f"face ({t}, {f}) cannot be glued to itself")
            table[t][f] = (t2, f2, perm)
            table[t2][f2] = (t, f, inverse(perm))
        return Triangulation(self._n, table)

    def with_tetrahedra(self, k):
        rows = [list(r) for r in self._glue] + [[None] * 4 for _ in range(k)]
        return Triangulation(self._n + k, rows)

    # -- protocol ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self._glue == other._glue

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._glue)
        return self._hash

    def __repr__(self):
        return f"Triangulation({self._n} tetrahedra, {len(self.boundary_faces())} boundary faces)"

    # -- serialization -------------------------------------------------------

    def to_dict(self):
        return {
            "format": FORMAT,
            "tetrahedra": self._n,
            "gluings": [
                [None if g is None else [g[0], g[1], to_digits(g[2])] for g in row]
                for row in self._glue
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data):
        if data.get("format") != FORMAT:
            raise ValueError(f"unsupported format {data.get('format')!r}")
        n = data["tetrahedra"]
        rows = []
        for row in data["gluings"]:
            rows.append([None if s is None else (s[0], s[1], from_digits(s[2])) for s in row])
        return cls(n, rows)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))
