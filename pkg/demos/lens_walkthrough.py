"""Build the minimal layered L(26,5) and look at it from a few angles."""

import sys

from lenstri import (
    LensSpec,
    Skeleton,
    classify_family,
    euclid_steps,
    find_lsts,
    homology_h1,
    minimal_layered_lens,
    s_maximal_lsts,
    stats,
    z2_colorings,
)


def main(p=26, q=5):
    L = LensSpec(p, q)
    tri = minimal_layered_lens(L)
    sk = Skeleton(tri)
    print(f"{L}: {tri.size} tetrahedra, E(P,Q) - 3 = {euclid_steps(p, q) - 3}")
    print("H1 =", homology_h1(tri))
    print("edge degrees:", sorted(sk.degrees, reverse=True))
    fam = classify_family(L)
    print("family:", None if fam is None else (fam.index, fam.s, fam.t))

    for c in z2_colorings(tri, sk):
        st = stats(tri, c)
        print(f"colouring: A={st.A} B={st.B} C={st.C} even={st.even} odd={st.odd} chi={st.chi}")

    lsts = find_lsts(tri)
    print(f"{len(lsts)} embedded layered solid tori")
    for x in s_maximal_lsts(tri):
        print("  S-maximal:", x.tets, "S index", x.s_index, "triple", x.triple)


if __name__ == "__main__":
    main(*map(int, sys.argv[1:3]))
