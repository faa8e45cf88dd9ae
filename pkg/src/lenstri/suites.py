"""Named verification suites.

Each suite returns a report ``{"suite", "params", "checks", "results",
"failures", "ok"}`` where every result is a small JSON-ready dict with an
``ok`` flag.  Reports
contain only integers, strings and booleans, so equal inputs give
byte-identical JSON.
"""

from __future__ import annotations

import random
from math import gcd

from .arith import LensSpec, classify_family, continued_fraction, euclid_steps, family_collisions, family_lens
from .census import census, filter_by_h1, naive_census, verify_unique_minimal
from .homology import AbelianGroup, homology_h1
from .layered import (
    fold_on_slope,
    l_k,
    layer_on_slope,
    layered_lens,
    minimal_layered_extension,
    minimal_layered_lens,
    pair_solid_tori,
    s1,
    s_k,
    worked_example,
)
from .lst import find_lsts, lst_intersection, s_maximal_lsts
from .moves import edge_flip_4_4, flip_degree_report, pachner_2_3, pachner_3_2
from .signature import canonical_signature
from .skeleton import Skeleton, degree_census, is_orientable
from .z2 import condition3_check, dual_surface, stats, surface_orientability, z2_colorings

DEFAULTS = {
    "sk-degrees": {"k": (2, 20)},
    "lk-degrees": {"k": (1, 20)},
    "eq1": {"P": (4, 40), "n": 3},
    "parity": {"k": (1, 19), "s": (1, 6), "t": (1, 6), "P": (4, 100)},
    "fold-table": {"k": (1, 10), "size": 6, "q": (2, 50)},
    "pairings": {"s": (1, 4), "t": (1, 4)},
    "families": {"P": (4, 200), "n": (2, 8)},
    "example-41s": {"s": [2, 4, 6]},
    "census-uniqueness": {"n": 3},
    "moves": {"rounds": 200, "seed": 0, "n": 4},
}


class _Report:
    def __init__(self, name, params):
        self.name = name
        self.params = params
        self.checks = []

    def check(self, name, ok, **detail):
        rec = {"check": name, "ok": bool(ok)}
        rec.update(detail)
        self.checks.append(rec)
        return ok

    def expect(self, name, got, want, **detail):
        return self.check(name, got == want, got=got, expected=want, **detail)

    def result(self):
        fails = [c for c in self.checks if not c["ok"]]
        return {
            "suite": self.name,
            "params": {k: list(v) if isinstance(v, tuple) else v for k, v in self.params.items()},
            "checks": len(self.checks),
            "results": self.checks,
            "failures": fails,
            "ok": not fails,
        }


def _span(r):
    """A 2-tuple is an inclusive range; a list holds explicit values."""
    if isinstance(r, int):
        return [r]
    if isinstance(r, tuple) and len(r) == 2:
        return range(r[0], r[1] + 1)
    return list(r)


def _bounds(r):
    vals = list(_span(r))
    return min(vals), max(vals)


def _order(tri):
    return homology_h1(tri).order


def _counting_identities(tri, sk=None):
    sk = sk or Skeleton(tri)
    deg = degree_census(tri, sk)
    return sum(deg.values()) == tri.size + 1 and sum((6 - i) * c for i, c in deg.items()) == 6


def sk_vector(k):
    """Expected degrees of ``e_1, ..., e_{k+2}`` in ``s_k(k)``."""
    if k == 1:
        return [3, 2, 1]
    return [2 * k + 1, 3] + [4] * (k - 2) + [3, 1]


def lk_vector(k):
    """Expected degrees of ``e_1, ..., e_{k+1}`` in ``l_k(k)``."""
    if k == 1:
        return [4, 2]
    return [2 * k + 2, 3] + [4] * (k - 2) + [3]


def lk_degrees(k):
    """Degrees of ``e_1, ..., e_{k+1}`` measured in the fold of ``s_k(k)``."""
    b = s_k(k)
    tri, _ = fold_on_slope(b, k + 1)
    sk = Skeleton(tri)
    out = []
    for j in range(k + 1):
        t, e = b.skeleton.edges[j].slots[0]
        out.append(sk.edges[sk.edge_of_slot[6 * t + e]].degree)
    return out


def suite_sk_degrees(k=(2, 20)):
    rep = _Report("sk-degrees", {"k": k})
    for kk in _span(k):
        b = s_k(kk)
        rep.expect(f"s_{kk} degrees", list(b.degrees), sk_vector(kk))
        rep.expect(f"s_{kk} triple", list(b.triple), [1, kk + 1, kk + 2])
        rep.expect(f"s_{kk} label of e_{kk}", b.labels[kk - 1], kk)
    return rep.result()


def suite_lk_degrees(k=(1, 20)):
    rep = _Report("lk-degrees", {"k": k})
    for kk in _span(k):
        tri, L = l_k(kk)
        sk = Skeleton(tri)
        rep.expect(f"l_{kk} degrees", lk_degrees(kk), lk_vector(kk))
        rep.expect(f"l_{kk} size and edges", [tri.size, len(sk.edges)], [kk, kk + 1])
        rep.expect(f"l_{kk} lens", L.P, kk + 3)
        rep.check(f"l_{kk} counting identities", _counting_identities(tri, sk))
    return rep.result()


def corpus(P=(4, 40), n=3):
    """Named closed triangulations used by the identity checks."""
    out = []
    for kk in range(1, 13):
        out.append((f"l_{kk}", l_k(kk)[0]))
    for L in (LensSpec(1, 0), LensSpec(2, 1), LensSpec(3, 1)):
        out.append((str(L), layered_lens(L)))
    for p in _span(P):
        for q in sorted({LensSpec(p, q).normal_form().Q for q in range(1, p) if gcd(p, q) == 1}):
            out.append((f"min {LensSpec(p, q)}", minimal_layered_lens(LensSpec(p, q))))
    for s in range(1, 4):
        for t in range(s, 4):
            for pr in range(1, 7):
                out.append((f"pair {s} {t} {pr}", pair_solid_tori(s, t, pr)[0]))
    for s in (2, 4):
        out.append((f"example s={s}", worked_example(s)[0]))
    for m in range(1, n + 1):
        for mem in census(m).members:
            out.append((f"census {mem.sig}", mem.triangulation()))
    return out


def suite_eq1(P=(4, 40), n=3):
    rep = _Report("eq1", {"P": P, "n": n})
    pairs = 0
    for name, tri in corpus(P, n):
        sk = Skeleton(tri)
        if len(sk.vertices) != 1:
            continue
        rep.check(f"{name} counting identities", _counting_identities(tri, sk))
        for c in z2_colorings(tri, sk):
            pairs += 1
            try:
                st = stats(tri, c, sk)
            except AssertionError as exc:
                rep.check(f"{name} eq1", False, coloring=list(c.parity), error=str(exc))
                continue
            lhs, rhs = st.eq1()
            ok = lhs == rhs and st.chi == st.chi_k and st.even_preimages == 2 * st.A + 3 * st.B + 6 * st.C
            ok = ok and st.even_preimages == sum(d * m for d, m in st.even_by_degree.items())
            rep.check(f"{name} eq1", ok, coloring=list(c.parity), lhs=lhs, rhs=rhs, chi=st.chi, chi_k=st.chi_k)
    rep.check("colourings examined", pairs > 0, pairs=pairs)
    return rep.result()


def _even_odd(tri):
    (c,) = z2_colorings(tri)
    st = stats(tri, c)
    return st, c


def suite_parity(k=(1, 19), s=(1, 6), t=(1, 6), P=(4, 100)):
    rep = _Report("parity", {"k": k, "s": s, "t": t, "P": P})
    for kk in _span(k):
        if kk % 2 == 0:
            continue
        st, c = _even_odd(l_k(kk)[0])
        rep.expect(f"l_{kk} even = odd", [st.even, st.odd], [(kk + 1) // 2, (kk + 1) // 2])
    for ss in _span(s):
        for tt in _span(t):
            # family 2 with s odd and t even, family 3 with s even and t odd
            fam = 2 if ss % 2 else 3
            if (ss + tt) % 2 == 0:
                continue
            L = family_lens(fam, ss, tt)
            if L is None:
                continue
            st, c = _even_odd(minimal_layered_lens(L))
            e = (ss + tt + 1) // 2
            rep.expect(f"family {fam} s={ss} t={tt} {L} even = odd", [st.even, st.odd], [e, e])
    lo, hi = _bounds(P)
    for p in range(max(lo, 4), hi + 1):
        if p % 2:
            continue
        for q in sorted({LensSpec(p, q).normal_form().Q for q in range(1, p) if gcd(p, q) == 1}):
            L = LensSpec(p, q)
            tri = minimal_layered_lens(L)
            st, c = _even_odd(tri)
            rep.check(f"{L} even <= odd", st.even <= st.odd, even=st.even, odd=st.odd)
            if p > 4:
                rep.check(f"{L} condition 3 iff even = odd",
                          condition3_check(tri, c) == (st.even == st.odd), even=st.even, odd=st.odd)
                rep.check(f"{L} dual surface non-orientable", not surface_orientability(dual_surface(tri, c)))
    return rep.result()


def _all_builds(size):
    builds, frontier = [s1()], [s1()]
    for _ in range(size - 1):
        nxt = []
        for b in frontier:
            for x in b.triple:
                nxt.append(layer_on_slope(b, x))
        builds += nxt
        frontier = nxt
    return builds


def suite_fold_table(k=(1, 10), size=6, q=(2, 50)):
    rep = _Report("fold-table", {"k": k, "size": size, "q": q})
    table = [
        ("S_1 on 1", s1(), 1, LensSpec(5, 2)),
        ("S_2 on 3", s_k(2), 3, LensSpec(5, 1)),
        ("S_2 on 1", s_k(2), 1, LensSpec(7, 2)),
        ("S_2 on 4", s_k(2), 4, LensSpec(2, 1)),
    ]
    for name, b, x, want in table:
        tri, L = fold_on_slope(b, x)
        rep.check(f"fold {name}", L.normal_form() == want.normal_form() and _order(tri) == want.P,
                  got=str(L), expected=str(want), order=_order(tri))
    rep.expect("layer S_1 on slope 3", list(layer_on_slope(s1(), 3).triple), [1, 1, 2])
    rep.expect("layer S_1 on slope 2", list(layer_on_slope(s1(), 2).triple), [1, 3, 4])
    for kk in _span(k):
        rep.expect(f"|H1(l_{kk})|", _order(l_k(kk)[0]), kk + 3)
    bad = []
    count = 0
    for b in _all_builds(size):
        for c, x in b.boundary:
            tri, L = fold_on_slope(b, x)
            count += 1
            if _order(tri) != L.P:
                bad.append({"triple": list(b.triple), "slope": x, "lens": str(L), "order": _order(tri)})
    rep.check(f"fold order matches lens on builds up to {size} tetrahedra", not bad, folds=count, bad=bad[:5])
    lo, hi = _bounds(q)
    for qq in range(lo, hi + 1):
        for p in range(1, qq):
            if gcd(p, qq) != 1:
                continue
            n = minimal_layered_extension((p, qq, p + qq)).size
            want = euclid_steps(qq, p) - 1
            if n != want:
                rep.expect(f"extension {{{p},{qq},{p + qq}}} size", n, want)
            if euclid_steps(2 * p + qq, p) != euclid_steps(qq, p) + 2:
                rep.check(f"E(2p+q, p) = E(q, p) + 2 at ({p}, {qq})", False)
    rep.check(f"extension sizes and E(2p+q, p) for q <= {hi}", True)
    return rep.result()


def _lst_pair(tri):
    return s_maximal_lsts(tri, find_lsts(tri))


def suite_pairings(s=(1, 4), t=(1, 4)):
    rep = _Report("pairings", {"s": s, "t": t})
    for ss in _span(s):
        for tt in _span(t):
            if tt < ss:
                continue
            for pr in range(1, 7):
                tag = f"pairing {pr} s={ss} t={tt}"
                tri, want = pair_solid_tori(ss, tt, pr)
                sk = Skeleton(tri)
                rep.expect(f"{tag} |H1|", _order(tri), want)
                rep.check(f"{tag} orientable", is_orientable(tri))
                if pr in (4, 5):
                    rep.check(f"{tag} degree-2 edge", 2 in sk.degrees, degrees=sorted(sk.degrees))
                smax = _lst_pair(tri)
                if pr == 1 and ss + tt > 2:
                    if len(smax) == 2:
                        r = lst_intersection(tri, smax[0], smax[1], sk)
                        rep.expect(f"{tag} shared tetrahedra", r.tets, ss + tt - 2)
                    else:
                        rep.check(f"{tag} two S-maximal", False, found=len(smax))
                if pr in (2, 3) and ss >= 2:
                    sizes = sorted(x.size for x in smax)
                    want_sizes = sorted((ss, tt + 1) if pr == 2 else (ss + 1, tt))
                    shared = lst_intersection(tri, smax[0], smax[1], sk).tets if len(smax) == 2 else None
                    rep.check(f"{tag} two S-maximal meeting in one tetrahedron",
                              len(smax) == 2 and shared == 1 and sizes == want_sizes,
                              sizes=sizes, expected_sizes=want_sizes, shared=shared)
                if pr == 6 and ss >= 2:
                    r = lst_intersection(tri, smax[0], smax[1], sk) if len(smax) == 2 else None
                    rep.check(f"{tag} two S-maximal meeting in two faces",
                              r is not None and r.tets == 0 and r.faces == 2,
                              found=len(smax), report=r.to_dict() if r else None)
    return rep.result()


def suite_families(P=(4, 200), n=(2, 8)):
    rep = _Report("families", {"P": P, "n": n})
    for L, want in ((LensSpec(6, 1), (1, 1, 2)), (LensSpec(26, 5), (2, 3, 4)), (LensSpec(16, 5), (3, 2, 3))):
        f = classify_family(L)
        rep.expect(f"family of {L}", [f.index, f.s, f.t] if f else None, list(want))
    for m in _span(n):
        rep.expect(f"L({2 * m},1) size", minimal_layered_lens(LensSpec(2 * m, 1)).size, 2 * m - 3)
    rep.expect("L(26,5) size", minimal_layered_lens(LensSpec(26, 5)).size, 7)
    rep.expect("L(16,5) size", minimal_layered_lens(LensSpec(16, 5)).size, 5)
    lo, hi = _bounds(P)
    bad = []
    overlaps = []
    for p in range(max(lo, 4), hi + 1):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            L = LensSpec(p, q)
            steps = {euclid_steps(p, x) for x in L.equivalents()}
            if len(steps) != 1:
                bad.append({"lens": str(L), "check": "E invariant", "values": sorted(steps)})
            if sum(continued_fraction(p, q)) != euclid_steps(p, q):
                bad.append({"lens": str(L), "check": "continued fraction sum"})
            if q == L.normal_form().Q:
                size = minimal_layered_lens(L).size
                if size != euclid_steps(p, q) - 3:
                    bad.append({"lens": str(L), "check": "size", "size": size})
                try:
                    both = family_collisions(L)
                except AssertionError as exc:
                    bad.append({"lens": str(L), "check": "collision pattern", "error": str(exc)})
                    continue
                if both:
                    overlaps.append({"lens": str(L), "families": [[f.index, f.s, f.t] for f in both]})
    rep.check(f"E invariance and sizes for P <= {hi}", not bad, bad=bad[:5])
    # the families as written share members; every overlap is reported
    rep.check(f"families mutually exclusive for P <= {hi}", not overlaps,
              overlaps=len(overlaps), first=overlaps[:3])
    return rep.result()


def suite_example_41s(s=(2, 4, 6)):
    rep = _Report("example-41s", {"s": s})
    for ss in _span(s):
        tri, L = worked_example(ss)
        P = 41 * ss + 58
        st, _ = _even_odd(tri)
        rep.expect(f"s={ss} |H1|", _order(tri), P)
        rep.expect(f"s={ss} lens", [L.P, L.normal_form() == LensSpec(P, 12 * ss + 17).normal_form()], [P, True])
        rep.expect(f"s={ss} tetrahedra", tri.size, ss + 7)
        rep.expect(f"s={ss} even = odd", st.even, st.odd)
        rep.expect(f"s={ss} continued fraction", continued_fraction(P, 12 * ss + 17), [3, 2, 2, 2, ss + 1])
        rep.expect(f"s={ss} E", euclid_steps(P, 12 * ss + 17), ss + 10)
    return rep.result()


def suite_census_uniqueness(n=3):
    rep = _Report("census-uniqueness", {"n": n})
    res = {m: census(m) for m in range(1, n + 1)}
    z4 = [m.sig for m in filter_by_h1(res[1], "Z4")]
    rep.expect("n=1 Z4 classes", z4, [canonical_signature(l_k(1)[0])])
    h1s = {str(m.h1) for m in res[1].members}
    rep.check("n=1 contains 0, Z4, Z5", {"0", "Z4", "Z5"} <= h1s, groups=sorted(h1s))
    if n >= 2:
        h1s = {str(m.h1) for m in res[2].members}
        want = {"Z8", "Z2 + Z2", "Z5", "Z7", "Z3", "Z2"}
        rep.check("n=2 contains Z8, Z2+Z2, Z5, Z7, Z3, Z2", want <= h1s, groups=sorted(h1s))
        rep.expect("no Z6 at n <= 2", [m.sig for r in (res[1], res[2]) for m in filter_by_h1(r, "Z6")], [])
    if n >= 3:
        z6 = [m.sig for m in filter_by_h1(res[3], "Z6")]
        rep.expect("n=3 Z6 classes", z6, [canonical_signature(l_k(3)[0])])
    for m in range(1, min(n, 2) + 1):
        rep.expect(f"n={m} matches naive enumeration", res[m].signatures(), naive_census(m))
    for m, r in res.items():
        bad = [x.sig for x in r.members if not _counting_identities(x.triangulation())]
        rep.expect(f"n={m} counting identities", bad, [])
    for L, cap in ((LensSpec(4, 1), 1), (LensSpec(5, 2), 1), (LensSpec(6, 1), 3)):
        if cap > n:
            continue
        r = verify_unique_minimal(L, cap, res)
        rep.check(f"{L} unique minimal", r["unique"], size=r["size"], others=r["others"])
    return rep.result()


def random_round_trip(tri, rng):
    """One random move followed by its inverse; ``None`` when no move applies."""
    sk = Skeleton(tri)
    options = []
    for fc in sk.faces:
        if not fc.boundary and fc.slots[0][0] != fc.slots[1][0]:
            options.append(("2-3", fc.index))
    for ec in sk.edges:
        if not ec.boundary and ec.degree == len(ec.tetrahedra) and ec.embeddings is not None:
            if ec.degree == 3:
                options.append(("3-2", ec.index))
            elif ec.degree == 4:
                options.append(("4-4", ec.index))
    if not options:
        return None
    # pick the kind first so the rarer 3-2 and 4-4 moves are not swamped by 2-3
    kind = rng.choice(sorted({k for k, _ in options}))
    x = rng.choice([i for k, i in options if k == kind])
    if kind == "2-3":
        mid = pachner_2_3(tri, x, sk)
        back = pachner_3_2(mid, Skeleton(mid).edge_class(mid.size - 1, 0, 1))
    elif kind == "3-2":
        mid = pachner_3_2(tri, x, sk)
        back = pachner_2_3(mid, Skeleton(mid).face_class(mid.size - 1, 0))
    else:
        diag = rng.randrange(2)
        mid = edge_flip_4_4(tri, x, diag, sk)
        axis = Skeleton(mid).edge_class(mid.size - 1, 0, 1)
        backs = [edge_flip_4_4(mid, axis, d) for d in (0, 1)]
        sig = canonical_signature(tri)
        back = next((b for b in backs if canonical_signature(b) == sig), backs[0])
    return kind, x, mid, back


def suite_moves(rounds=200, seed=0, n=4):
    from .catalog import ring

    rep = _Report("moves", {"rounds": rounds, "seed": seed, "n": n})
    rng = random.Random(seed)
    # census instances with an embedded octahedron feed both the flips and the round trips
    instances = []
    for m in census(n).members if n <= 4 else []:
        tri = m.triangulation()
        sk = Skeleton(tri)
        instances += [(m.sig, tri, e.index) for e in sk.edges if e.degree == 4 and len(e.tetrahedra) == 4]
    pool = [tri for name, tri in corpus((4, 20), min(n, 3)) if tri.size >= 2]
    pool += list({canonical_signature(tri): tri for _, tri, _ in instances}.values())
    done = 0
    kinds = {}
    while done < rounds:
        tri = rng.choice(pool)
        out = random_round_trip(tri, rng)
        if out is None:
            continue
        kind, x, mid, back = out
        done += 1
        kinds[kind] = kinds.get(kind, 0) + 1
        ok = canonical_signature(back) == canonical_signature(tri)
        ok = ok and homology_h1(mid) == homology_h1(tri) and is_orientable(mid) == is_orientable(tri)
        ok = ok and len(Skeleton(mid).vertices) == len(Skeleton(tri).vertices)
        if not ok:
            rep.check("round trip", False, move=kind, at=x, sig=canonical_signature(tri))
        elif kind == "2-3" and mid.size <= 8 and len(pool) < 4 * rounds:
            # grown triangulations carry degree-3 edges for the inverse move
            pool.append(mid)
    rep.check("round trips", True, rounds=done, kinds=dict(sorted(kinds.items())))
    # flip reports on the census instances and on the octahedron itself
    octa = ring(4)
    instances.append(("octahedron", octa, Skeleton(octa).edge_class(0, 0, 1)))
    flips = 0
    for name, tri, e in instances:
        for diag in (0, 1):
            r = flip_degree_report(tri, e, diag)
            flips += 1
            model = sorted(r["model"].values())
            ok = model == [-1] * 4 + [0] * 4 + [1] * 4
            ok = ok and all(c["measured"] == c["predicted"] for c in r["classes"])
            if r["distinct_octahedron_edges"]:
                deltas = sorted(c["measured"] for c in r["classes"] if c["edge"] != e)
                ok = ok and all(d in (-1, 0, 1) for d in deltas)
            ok = ok and r["new_axis_degree"] == 4
            if not ok:
                rep.check("flip degrees", False, instance=name, edge=e, diag=diag, classes=r["classes"])
    rep.check("flip degree reports", flips > 0, flips=flips)
    return rep.result()


SUITES = {
    "sk-degrees": suite_sk_degrees,
    "lk-degrees": suite_lk_degrees,
    "eq1": suite_eq1,
    "parity": suite_parity,
    "fold-table": suite_fold_table,
    "pairings": suite_pairings,
    "families": suite_families,
    "example-41s": suite_example_41s,
    "census-uniqueness": suite_census_uniqueness,
    "moves": suite_moves,
}


def run_suite(name, **params):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    args = dict(DEFAULTS[name])
    args.update({k: v for k, v in params.items() if v is not None})
    return SUITES[name](**args)
