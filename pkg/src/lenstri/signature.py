"""Canonical isomorphism signatures.

For each choice of starting tetrahedron and vertex labelling, tetrahedra are
renumbered in breadth-first order and every new tetrahedron is labelled so
that the gluing which discovers it is the identity.  The face table is then
written out slot by slot as integers (0 for boundary, otherwise
``1 + 24 * target + perm_index``); the smallest such sequence over all starts
is the canonical code.  Codes are printed in a 64-letter alphabet.
"""

from __future__ import annotations

from .perm import EDGE_VERTS, PERM_INDEX, PERMS, compose, inverse
from .triangulation import Triangulation

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-"
_DIGIT = {c: i for i, c in enumerate(ALPHABET)}


def bfs_code(tri, start, sigma, bound=None):
    """Code of ``tri`` from ``start`` with labelling ``sigma`` (old vertex -> new vertex).

    Returns ``(code, order, labels)``.  With ``bound`` given, stops as soon as the
    code is known to exceed it and returns ``None``.
    """
    n = tri.size
    glue = tri.gluings
    newidx = {start: 0}
    order = [start]
    labels = {start: sigma}
    code = []
    less = False
    i = 0
    while i < len(order):
        t = order[i]
        s = labels[t]
        s_inv = inverse(s)
        for nf in range(4):
            f = s_inv[nf]
            g = glue[t][f]
            if g is None:
                val = 0
            else:
                t2, f2, p = g
                if t2 not in newidx:
                    newidx[t2] = len(order)
                    order.append(t2)
                    # new labels make the gluing read as the identity
                    labels[t2] = compose(s, inverse(p))
                s2 = labels[t2]
                q = compose(s2, compose(p, s_inv))
                val = 1 + 24 * newidx[t2] + PERM_INDEX[q]
            if bound is not None and not less:
                k = len(code)
                b = bound[k]
                if val > b:
                    return None
                if val < b:
                    less = True
            code.append(val)
        i += 1
    if len(order) != n:
        raise ValueError("signature needs a connected triangulation")
    return code, order, [labels[t] for t in order]


def _component_code(tri):
    best = None
    for start in range(tri.size):
        for sigma in PERMS:
            res = bfs_code(tri, start, sigma, best)
            if res is not None and (best is None or res[0] < best):
                best = res[0]
    return best


def _encode(n, code):
    width = 1
    top = 24 * n + 1
    while 64 ** width <= top:
        width += 1
    out = [_enc_int(n), ALPHABET[width]]
    for v in code:
        digits = []
        for _ in range(width):
            v, r = divmod(v, 64)
            digits.append(ALPHABET[r])
        out.append("".join(reversed(digits)))
    return "".join(out)


def _enc_int(n):
    # variable length: first char holds the digit count
    digits = []
    while True:
        n, r = divmod(n, 64)
        digits.append(ALPHABET[r])
        if not n:
            break
    return ALPHABET[len(digits)] + "".join(reversed(digits))


def canonical_code(tri):
    """Minimal breadth-first code of a connected triangulation."""
    if tri.size == 0:
        return []
    return _component_code(tri)


def canonical_signature(tri):
    """Relabelling-invariant string, equal for two triangulations iff they are isomorphic."""
    comps = tri.components()
    if len(comps) <= 1:
        return _encode(tri.size, canonical_code(tri))
    parts = sorted(canonical_signature(tri.induced(c)) for c in comps)
    return ".".join(parts)


def from_signature(sig):
    """Rebuild a triangulation in its canonical labelling from a signature."""
    if "." in sig:
        tri = Triangulation(0)
        for part in sig.split("."):
            tri = tri.disjoint_union(from_signature(part))
        return tri
    try:
        pos = 0
        k = _DIGIT[sig[pos]]
        n = 0
        for c in sig[pos + 1 : pos + 1 + k]:
            n = 64 * n + _DIGIT[c]
        pos += 1 + k
        if n == 0:
            return Triangulation(0)
        width = _DIGIT[sig[pos]]
        pos += 1
        body = sig[pos:]
        if len(body) != 4 * n * width:
            raise ValueError("wrong length")
        vals = []
        for i in range(0, len(body), width):
            v = 0
            for c in body[i : i + width]:
                v = 64 * v + _DIGIT[c]
            vals.append(v)
    except (KeyError, IndexError) as exc:
        raise ValueError(f"malformed signature {sig!r}") from exc
    table = [[None] * 4 for _ in range(n)]
    for idx, v in enumerate(vals):
        if v == 0:
            continue
        t, f = divmod(idx, 4)
        t2, pi = divmod(v - 1, 24)
        if t2 >= n:
            raise ValueError(f"malformed signature {sig!r}")
        p = PERMS[pi]
        table[t][f] = (t2, p[f], p)
    return Triangulation(n, table)


def relabel_random(tri, rng):
    """Isomorphic copy under a random tetrahedron order and random vertex labellings."""
    order = list(range(tri.size))
    rng.shuffle(order)
    perms = [PERMS[rng.randrange(24)] for _ in range(tri.size)]
    return tri.relabel(order, perms)


def is_isomorphic(a, b):
    return a.size == b.size and canonical_signature(a) == canonical_signature(b)



def canonical_labellings(tri):
    """Every ``(order, labels)`` of a connected triangulation that realises its canonical code."""
    best = canonical_code(tri)
    out = []
    for start in range(tri.size):
        for sigma in PERMS:
            code, order, labels = bfs_code(tri, start, sigma)
            if code == best:
                out.append((order, labels))
    return out


def isomorphism(a, b):
    """An isomorphism from ``a`` onto ``b`` as ``(tet_map, vertex_maps)``, or ``None``.

    ``vertex_maps[t][v]`` is the vertex of ``b``'s tetrahedron ``tet_map[t]``
    matching vertex ``v`` of ``a``'s tetrahedron ``t``.  Both must be connected.
    """
    if a.size != b.size:
        return None
    if a.size == 0:
        return {}, {}
    best = canonical_code(a)
    _, order_a, labels_a = next(
        bfs_code(a, s, sg) for s in range(a.size) for sg in PERMS if bfs_code(a, s, sg)[0] == best
    )
    for start in range(b.size):
        for sigma in PERMS:
            res = bfs_code(b, start, sigma, best)
            if res is None or res[0] != best:
                continue
            _, order_b, labels_b = res
            tet_map = {}
            vmaps = {}
            for ta, tb, la, lb in zip(order_a, order_b, labels_a, labels_b):
                tet_map[ta] = tb
                vmaps[ta] = compose(inverse(lb), la)
            return tet_map, vmaps
    return None


def pointed_signature(tri, t, i, j):
    """Signature of a connected triangulation together with the edge class of slot ``(t, i-j)``.

    Equal for two pointed triangulations iff an isomorphism carries one
    marked edge class onto the other.
    """
    from .perm import EDGE_INDEX
    from .skeleton import Skeleton

    sk = Skeleton(tri)
    c = sk.edge_class(t, i, j)
    slots = sk.edges[c].slots
    mark = None
    for order, labels in canonical_labellings(tri):
        pos = {tt: k for k, tt in enumerate(order)}
        for tt, e in slots:
            a, b = (labels[pos[tt]][v] for v in EDGE_VERTS[e])
            val = 6 * pos[tt] + EDGE_INDEX[min(a, b), max(a, b)]
            if mark is None or val < mark:
                mark = val
    return f"{canonical_signature(tri)}:{mark}"
