"""Count census classes by first homology group, for n = 1, 2, 3 tetrahedra."""

import sys
from collections import Counter

from lenstri import census


def main(max_n=3):
    for n in range(1, max_n + 1):
        res = census(n)
        groups = Counter(str(m.h1) for m in res.members)
        print(f"n={n}: {len(res.members)} classes")
        for g, k in sorted(groups.items()):
            print(f"  {g:>12}  {k}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
