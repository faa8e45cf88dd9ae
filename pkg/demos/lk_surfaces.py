"""Dual surfaces of the unique colouring of L_k, k odd."""

from lenstri import dual_surface, l_k, stats, surface_orientability, z2_colorings

print(" k  L        even odd  chi  orientable")
for k in range(1, 12, 2):
    tri, L = l_k(k)
    (c,) = z2_colorings(tri)
    st = stats(tri, c)
    surf = dual_surface(tri, c)
    print(f"{k:2d}  {str(L):8} {st.even:4d} {st.odd:4d} {st.chi:4d}  {surface_orientability(surf)}")
