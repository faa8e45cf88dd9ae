"""Exhaustive census of closed orientable triangulations up to isomorphism.

Triangulations are generated directly in the breadth-first form used by the
signature code: faces are filled in (tetrahedron, face) order, and a face
that reaches a new tetrahedron is glued to the same face of it by the
identity.  A partial triangulation is abandoned as soon as another start and
labelling gives a strictly smaller code on the part already decided, so each
isomorphism class is produced exactly once, by its canonical form.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

from .homology import AbelianGroup, homology_h1
from .perm import PERM_INDEX, PERMS, compose, inverse, sign
from .signature import _encode, canonical_signature
from .skeleton import Skeleton
from .triangulation import Triangulation

HARD_CAP = 5
IDENTITY = (0, 1, 2, 3)


@dataclass(frozen=True)
class CensusConfig:
    n: int
    require_closed: bool = True
    require_orientable: bool = True
    require_one_vertex: bool = True
    forbid_reversed_edge: bool = True
    min_edge_degree: int | None = None
    jobs: int = 1
    cap: int = HARD_CAP

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("census needs n >= 1")
        if self.n > self.cap:
            raise ValueError(
                f"n = {self.n} is over the cap of {self.cap}; larger censuses need a distributed run"
            )
        if not (self.require_closed and self.require_orientable):
            raise ValueError("only closed orientable censuses are generated")


@dataclass(frozen=True)
class CensusMember:
    sig: str
    n: int
    h1: AbelianGroup
    degrees: dict
    vertices: int

    def triangulation(self):
        from .signature import from_signature

        return from_signature(self.sig)

    def to_dict(self):
        return {
            "sig": self.sig,
            "n": self.n,
            "h1": {"rank": self.h1.rank, "torsion": list(self.h1.torsion)},
            "degrees": {str(d): c for d, c in sorted(self.degrees.items())},
        }


@dataclass
class CensusResult:
    n: int
    members: list
    stats: dict = field(default_factory=dict)

    def signatures(self):
        return [m.sig for m in self.members]

    def to_ndjson(self):
        return "".join(json.dumps(m.to_dict()) + "\n" for m in self.members)


# ---------------------------------------------------------------------------
# generation


def _odd_or_even_perms(f, f2, want_sign):
    return [p for p in PERMS if p[f] == f2 and sign(p) == want_sign]


class _Search:
    def __init__(self, n):
        self.n = n
        self.table = [[None] * 4 for _ in range(n)]
        self.orient = [0] * n
        self.orient[0] = 1
        self.used = 1
        self.examined = 0
        self.pruned = 0
        self.leaves = []

    # -- canonicity of the decided part -------------------------------------

    def _own(self, k):
        t, f = divmod(k, 4)
        g = self.table[t][f]
        if g is None:
            return None
        return 1 + 24 * g[0] + PERM_INDEX[g[2]]

    def _beaten(self):
        """Whether some other start and labelling gives a smaller decided prefix."""
        table = self.table
        for start in range(self.used):
            for sigma in PERMS:
                if start == 0 and sigma == IDENTITY:
                    continue
                newidx = {start: 0}
                order = [start]
                labels = {start: sigma}
                k = 0
                i = 0
                verdict = None
                while verdict is None and i < len(order):
                    t = order[i]
                    s = labels[t]
                    s_inv = inverse(s)
                    for nf in range(4):
                        g = table[t][s_inv[nf]]
                        own = self._own(k)
                        if g is None or own is None:
                            verdict = False
                            break
                        t2, _, p = g
                        if t2 not in newidx:
                            newidx[t2] = len(order)
                            order.append(t2)
                            labels[t2] = compose(s, inverse(p))
                        q = compose(labels[t2], compose(p, s_inv))
                        val = 1 + 24 * newidx[t2] + PERM_INDEX[q]
                        if val != own:
                            verdict = val < own
                            break
                        k += 1
                    i += 1
                if verdict:
                    return True
        return False

    # -- recursion -----------------------------------------------------------

    def _first_open(self):
        for t in range(self.used):
            for f in range(4):
                if self.table[t][f] is None:
                    return t, f
        return None

    def _glue(self, t, f, t2, f2, p):
        self.table[t][f] = (t2, f2, p)
        self.table[t2][f2] = (t, f, inverse(p))

    def _unglue(self, t, f, t2, f2):
        self.table[t][f] = None
        self.table[t2][f2] = None

    def choices(self):
        """Possible gluings for the first open face, in generation order."""
        spot = self._first_open()
        if spot is None:
            return None, []
        t, f = spot
        out = []
        for t2 in range(self.used):
            for f2 in range(4):
                if (t2, f2) == (t, f) or self.table[t2][f2] is not None:
                    continue
                want = -self.orient[t] * self.orient[t2]
                for p in _odd_or_even_perms(f, f2, want):
                    out.append((t, f, t2, f2, p))
        if self.used < self.n:
            out.append((t, f, self.used, f, IDENTITY))
        return spot, out

    def apply(self, choice):
        t, f, t2, f2, p = choice
        new = t2 == self.used
        if new:
            self.used += 1
            self.orient[t2] = -self.orient[t]
        self._glue(t, f, t2, f2, p)
        return new

    def undo(self, choice, new):
        t, f, t2, f2, _ = choice
        self._unglue(t, f, t2, f2)
        if new:
            self.used -= 1
            self.orient[t2] = 0

    def run(self):
        self.examined += 1
        if self._beaten():
            self.pruned += 1
            return
        spot, opts = self.choices()
        if spot is None:
            if self.used == self.n:
                self.leaves.append([row[:] for row in self.table])
            return
        for ch in opts:
            new = self.apply(ch)
            self.run()
            self.undo(ch, new)


def _prefixes(n, depth):
    """Decision sequences of length ``depth`` (or complete, if shorter) that survive pruning."""
    s = _Search(n)
    out = []

    def rec(path):
        if s._beaten():
            return
        spot, opts = s.choices()
        if len(path) == depth or spot is None:
            out.append(list(path))
            return
        for ch in opts:
            new = s.apply(ch)
            rec(path + [ch])
            s.undo(ch, new)

    rec([])
    return out


def _run_prefix(args):
    n, path, filters = args
    s = _Search(n)
    for ch in path:
        s.apply(ch)
    s.run()
    kept = []
    rejected = 0
    for table in s.leaves:
        tri = Triangulation(n, [[g for g in row] for row in table])
        m = _member(tri, filters)
        if m is None:
            rejected += 1
        else:
            kept.append(m.to_dict() | {"vertices": m.vertices})
    return {"examined": s.examined, "pruned": s.pruned, "rejected": rejected, "members": kept}


def _member(tri, filters):
    sk = Skeleton(tri)
    if filters["forbid_reversed_edge"] and sk.reversed_edges():
        return None
    if any(v.link != "sphere" for v in sk.vertices):
        return None
    if filters["require_one_vertex"] and len(sk.vertices) != 1:
        return None
    md = filters["min_edge_degree"]
    if md is not None and min(e.degree for e in sk.edges) < md:
        return None
    degs = {}
    for e in sk.edges:
        degs[e.degree] = degs.get(e.degree, 0) + 1
    code = []
    for row in tri.gluings:
        for t2, _, p in row:
            code.append(1 + 24 * t2 + PERM_INDEX[p])
    return CensusMember(_encode(tri.size, code), tri.size, homology_h1(tri, sk), degs, len(sk.vertices))


def _from_dict(d):
    h = d["h1"]
    return CensusMember(
        d["sig"], d["n"], AbelianGroup(h["rank"], tuple(h["torsion"])),
        {int(k): v for k, v in d["degrees"].items()}, d.get("vertices", 1),
    )


def _filters(cfg):
    return {
        "forbid_reversed_edge": cfg.forbid_reversed_edge,
        "require_one_vertex": cfg.require_one_vertex,
        "min_edge_degree": cfg.min_edge_degree,
    }


def enumerate_census(cfg, resume=None, prefix_depth=2):
    """Run the census described by ``cfg``.

    Work is split by the first ``prefix_depth`` gluing decisions; with
    ``resume`` naming a file, each finished part is appended to it as one
    JSON line and parts already recorded there are skipped.
    """
    if isinstance(cfg, int):
        cfg = CensusConfig(cfg)
    parts = _prefixes(cfg.n, prefix_depth)
    filters = _filters(cfg)
    done = {}
    if resume and os.path.exists(resume):
        with open(resume) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec.get("n") == cfg.n and rec.get("filters") == filters:
                    done[rec["part"]] = rec["result"]
    todo = [i for i in range(len(parts)) if i not in done]
    args = [(cfg.n, parts[i], filters) for i in todo]

    def record(i, res):
        done[i] = res
        if resume:
            with open(resume, "a") as fh:
                fh.write(json.dumps({"n": cfg.n, "filters": filters, "part": i, "result": res}) + "\n")

    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            for i, res in zip(todo, ex.map(_run_prefix, args)):
                record(i, res)
    else:
        for i, a in zip(todo, args):
            record(i, _run_prefix(a))

    members = {}
    stats = {"parts": len(parts), "examined": 0, "pruned": 0, "rejected": 0}
    for i in range(len(parts)):
        res = done[i]
        for key in ("examined", "pruned", "rejected"):
            stats[key] += res[key]
        for d in res["members"]:
            if d["sig"] in members:
                raise AssertionError(f"class {d['sig']} generated twice")
            members[d["sig"]] = _from_dict(d)
    out = [members[s] for s in sorted(members)]
    stats["kept"] = len(out)
    return CensusResult(cfg.n, out, stats)


_CACHE = {}


def census(n, jobs=1):
    """Default census at ``n`` tetrahedra, cached per process."""
    if n not in _CACHE:
        _CACHE[n] = enumerate_census(CensusConfig(n, jobs=jobs))
    return _CACHE[n]


def filter_by_h1(result, group):
    if isinstance(group, str):
        group = AbelianGroup.parse(group)
    members = result.members if hasattr(result, "members") else result
    return [m for m in members if m.h1 == group]


# ---------------------------------------------------------------------------
# independent oracle


def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, b)] + m


def _orientable_table(n, table):
    orient = [0] * n
    orient[0] = 1
    stack = [0]
    while stack:
        t = stack.pop()
        for t2, _, p in table[t]:
            want = -orient[t] * sign(p)
            if orient[t2] == 0:
                orient[t2] = want
                stack.append(t2)
            elif orient[t2] != want:
                return False
    return all(orient)


def naive_census(n, one_vertex=True):
    """Every closed gluing of ``n`` tetrahedra, deduplicated by signature (small ``n`` only)."""
    if n > 2:
        raise ValueError("the naive census is only practical for n <= 2")
    faces = [(t, f) for t in range(n) for f in range(4)]
    found = set()
    for match in _matchings(faces):
        for perms in _perm_choices(match):
            table = [[None] * 4 for _ in range(n)]
            for ((t, f), (t2, f2)), p in zip(match, perms):
                table[t][f] = (t2, f2, p)
                table[t2][f2] = (t, f, inverse(p))
            tri = Triangulation(n, table)
            if not tri.is_connected() or not _orientable_table(n, table):
                continue
            sk = Skeleton(tri)
            if sk.reversed_edges() or any(v.link != "sphere" for v in sk.vertices):
                continue
            if one_vertex and len(sk.vertices) != 1:
                continue
            found.add(canonical_signature(tri))
    return sorted(found)


def _perm_choices(match):
    opts = [[p for p in permutations(range(4)) if p[f] == f2] for (t, f), (t2, f2) in match]

    def rec(i):
        if i == len(opts):
            yield []
            return
        for p in opts[i]:
            for rest in rec(i + 1):
                yield [p] + rest

    return rec(0)


# ---------------------------------------------------------------------------
# uniqueness reports


def verify_unique_minimal(L, cap=3, results=None):
    """Census evidence that the minimal layered triangulation of ``L`` is the only candidate.

    Reports (a) classes with fewer tetrahedra and ``H1 = Z_P`` (should be
    none) and (b) the classes at the expected size with ``H1 = Z_P``; the
    layered one must be among them, and any others are listed for review.
    """
    from .arith import euclid_steps
    from .layered import layered_lens

    tri = layered_lens(L)
    size = tri.size
    if size > cap:
        raise ValueError(f"{L} needs {size} tetrahedra, over the cap {cap}")
    expected = euclid_steps(L.P, L.Q) - 3 if L.P > 3 else size
    group = AbelianGroup.from_factors(0, [L.P])
    results = results or {}
    smaller = {}
    for n in range(1, size):
        res = results.get(n) or census(n)
        smaller[n] = [m.sig for m in filter_by_h1(res, group)]
    res = results.get(size) or census(size)
    same = [m.sig for m in filter_by_h1(res, group)]
    sig = canonical_signature(tri)
    report = {
        "lens": str(L),
        "size": size,
        "expected_size": expected,
        "signature": sig,
        "smaller": {str(n): v for n, v in smaller.items()},
        "at_size": same,
        "found": sig in same,
        "others": [s for s in same if s != sig],
    }
    report["ok"] = (
        size == expected and report["found"] and not any(smaller.values())
    )
    report["unique"] = report["ok"] and not report["others"]
    return report
