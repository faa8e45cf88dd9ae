"""Lens space arithmetic: subtraction counts, continued fractions, equivalence, families."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _check_pair(p, q):
    if p < 0 or q < 0:
        raise ValueError(f"need nonnegative arguments, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) are not coprime")


def euclid_steps(p, q):
    """Subtraction steps taking the unordered pair ``(p, q)`` to ``(1, 0)``."""
    _check_pair(p, q)
    return sum(continued_fraction(max(p, q), min(p, q)))


def continued_fraction(p, q):
    """Partial quotients of ``p / q``; empty for ``(1, 0)``."""
    _check_pair(p, q)
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


@dataclass(frozen=True, order=True)
class LensSpec:
    """``L(P, Q)`` with ``0 <= Q < P`` and ``gcd(P, Q) = 1``.

    ``L(1, 0)`` is the 3-sphere; ``L(0, 1)`` stands for ``S^2 x S^1``.
    """

    P: int
    Q: int

    def __post_init__(self):
        if self.P == 0:
            if self.Q not in (1, -1):
                raise ValueError("L(0, q) needs q = 1")
            object.__setattr__(self, "Q", 1)
            return
        if self.P < 0:
            raise ValueError(f"P must be nonnegative, got {self.P}")
        q = self.Q % self.P
        if gcd(self.P, q) != 1:
            raise ValueError(f"L({self.P}, {self.Q}): parameters are not coprime")
        object.__setattr__(self, "Q", q)

    def __str__(self):
        return f"L({self.P},{self.Q})"

    def equivalents(self):
        """All ``Q'`` in ``{+-Q, +-Q^-1} mod P``, sorted."""
        P, Q = self.P, self.Q
        if P <= 1:
            return [self.Q]
        inv = pow(Q, -1, P)
        return sorted({Q % P, -Q % P, inv % P, -inv % P})

    def normal_form(self):
        """Representative with the smallest ``Q``."""
        return LensSpec(self.P, self.equivalents()[0])


def lens_equal(a, b):
    """``L(p, q1) = L(p, q2)`` iff ``q1 * q2^(+-1) = +-1 mod p``."""
    if a.P != b.P:
        return False
    p = a.P
    if p <= 2:
        return True
    inv = pow(b.Q, -1, p)
    return any((a.Q * x) % p in (1, p - 1) for x in (b.Q, inv))


@dataclass(frozen=True)
class Family:
    index: int
    s: int
    t: int

    def to_dict(self):
        return {"family": self.index, "s": self.s, "t": self.t}


def family_lens(index, s, t):
    """The lens space of a family member, ``None`` if ``(s, t)`` is out of range."""
    if index == 1 and t >= s >= 1:
        return LensSpec(s + t + 3, 1)
    if index == 2 and t > s > 1:
        return LensSpec((s + 2) * (t + 1) + 1, t + 1)
    if index == 3 and t > s > 1:
        return LensSpec((s + 1) * (t + 2) + 1, t + 2)
    if index == 4 and t >= 2:
        return LensSpec((t + 1) * (t + 2) + 1, t + 2)
    return None


def family_memberships(L):
    """Every ``(family, s, t)`` whose lens space equals ``L``."""
    P = L.P
    out = []
    if P >= 5 and lens_equal(L, LensSpec(P, 1)):
        for s in range(1, P):
            t = P - 3 - s
            if t >= s:
                out.append(Family(1, s, t))
    for t in range(2, P):
        # family 2: P = (s+2)(t+1) + 1
        if (P - 1) % (t + 1) == 0:
            s = (P - 1) // (t + 1) - 2
            if t > s > 1 and lens_equal(L, family_lens(2, s, t)):
                out.append(Family(2, s, t))
        # family 3: P = (s+1)(t+2) + 1
        if (P - 1) % (t + 2) == 0:
            s = (P - 1) // (t + 2) - 1
            if t > s > 1 and lens_equal(L, family_lens(3, s, t)):
                out.append(Family(3, s, t))
        if (t + 1) * (t + 2) + 1 == P and lens_equal(L, family_lens(4, 0, t)):
            out.append(Family(4, 0, t))
    return out


def classify_family(L):
    """The lowest-index family containing ``L`` (family 1 reported with the smallest ``s``), or ``None``.

    The families are not disjoint: ``F3(s, t) = F2(s - 1, t + 1)`` and
    ``F4(t) = F2(t - 1, t + 1)`` are equal as written, so
    :func:`family_memberships` lists every representation.
    """
    found = family_memberships(L)
    if not found:
        return None
    return min(found, key=lambda f: (f.index, f.s, f.t))


def family_collisions(L):
    """Memberships of ``L`` in more than one family, each explained by a parameter identity.

    Raises if two families meet in a way the two identities do not cover.
    """
    found = family_memberships(L)
    if len({f.index for f in found}) < 2:
        return []
    if any(f.index == 1 for f in found):
        raise AssertionError(f"{L}: family 1 meets another family")
    f2 = {(f.s, f.t) for f in found if f.index == 2}
    for f in found:
        if f.index == 3 and (f.s - 1, f.t + 1) not in f2:
            raise AssertionError(f"{L}: family 3 ({f.s}, {f.t}) has no family 2 twin")
        if f.index == 4 and (f.t - 1, f.t + 1) not in f2:
            raise AssertionError(f"{L}: family 4 (t = {f.t}) has no family 2 twin")
    return found
