"""Lattices in Q^2 up to homothety and their stabilizers in SL2(Z).

Matrices act on row vectors from the right. Every lattice commensurable with
Z x Z is homothetic to exactly one lattice with basis ``(M, g/h), (0, 1)``
where ``M > 0`` and ``0 <= g < h``, ``gcd(g, h) = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .finite_algebra import is_prime
from .gl2 import build_cartan
from .verdict import COMPUTED, GateEntry

IntMatrix = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]]


def _hnf_rows(rows) -> tuple[Fraction, Fraction, Fraction]:
    """Upper-triangular basis ``(a, b), (0, d)`` with ``a, d > 0``, ``0 <= b < d``
    of the lattice spanned by rational ``rows``."""
    den = reduce(lcm, (x.denominator for r in rows for x in r), 1)
    ints = [[int(x * den) for x in r] for r in rows]
    # column 0 by a gcd sweep
    pivot = None
    rest = []
    for r in ints:
        if pivot is None:
            if r[0] != 0:
                pivot = r
            else:
                rest.append(r)
            continue
        while r[0] != 0:
            q = pivot[0] // r[0]
            pivot = [pivot[0] - q * r[0], pivot[1] - q * r[1]]
            pivot, r = r, pivot
        rest.append(r)
    if pivot is None:
        raise ValueError("lattice does not have rank 2")
    d = reduce(gcd, (abs(r[1]) for r in rest), 0)
    if d == 0:
        raise ValueError("lattice does not have rank 2")
    a, b = pivot
    if a < 0:
        a, b = -a, -b
    b %= d
    return Fraction(a, den), Fraction(b, den), Fraction(d, den)


@dataclass(frozen=True)
class HomothetyLattice:
    """Homothety class with representative basis ``(M, g/h), (0, 1)``."""

    M: Fraction
    g: int
    h: int

    def __post_init__(self):
        object.__setattr__(self, "M", Fraction(self.M))
        if self.M <= 0:
            raise ValueError("M must be positive")
        if not (0 <= self.g < self.h) or gcd(self.g, self.h) != 1:
            raise ValueError(f"need 0 <= g < h with gcd 1, got g={self.g}, h={self.h}")

    @classmethod
    def from_basis(cls, rows) -> "HomothetyLattice":
        rows = [[Fraction(x) for x in r] for r in rows]
        a, b, d = _hnf_rows(rows)
        frac = b / d
        return cls(a / d, frac.numerator, frac.denominator)

    @property
    def basis(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.M, Fraction(self.g, self.h)), (Fraction(0), Fraction(1)))

    def contains(self, v) -> bool:
        """Membership of a rational row vector in the representative lattice."""
        x = Fraction(v[0]) / self.M
        if x.denominator != 1:
            return False
        y = Fraction(v[1]) - x * Fraction(self.g, self.h)
        return y.denominator == 1

    def image(self, m: IntMatrix) -> "HomothetyLattice":
        a, b, c, d = m
        rows = [(r[0] * a + r[1] * c, r[0] * b + r[1] * d) for r in self.basis]
        return HomothetyLattice.from_basis(rows)

    @property
    def is_standard(self) -> bool:
        return self.M == 1 and self.g == 0 and self.h == 1

    def __str__(self):
        if self.is_standard:
            return "ZxZ"
        return f"<({self.M}, {self.g}/{self.h}), (0, 1)>"


STANDARD = HomothetyLattice(Fraction(1), 0, 1)


def _det(m: IntMatrix) -> int:
    a, b, c, d = m
    return a * d - b * c


def fixes(m: IntMatrix, L: HomothetyLattice) -> bool:
    """Whether ``L m = L``, for an integer matrix of determinant 1.

    Both basis images lying in ``L`` gives ``L m`` inside ``L``, and equal
    covolume then forces equality.
    """
    if _det(m) != 1:
        raise ValueError("matrix must have determinant 1")
    a, b, c, d = m
    return all(L.contains((r[0] * a + r[1] * c, r[0] * b + r[1] * d)) for r in L.basis)


def fixes_by_congruence(m: IntMatrix, L: HomothetyLattice, p: int) -> bool:
    """The same test reduced to a congruence mod p, for the three shapes in
    the Gamma(p)-fixed list."""
    a, b, c, d = m
    if L.is_standard:
        return True
    if L.M == Fraction(1, p) and L.h in (1, p):
        g = L.g
        return (b + g * d - g * a - g * g * c) % p == 0
    if L.M == p and L.h == 1:
        return c % p == 0
    raise ValueError(f"{L} is not one of the listed shapes")


def gamma_p_fixed_lattices(p: int) -> list[HomothetyLattice]:
    """Homothety classes fixed by Gamma(p): ``<(1, g), (0, p)>`` for
    ``0 <= g < p``, ``<(p, 0), (0, 1)>`` and Z x Z. The ``g = 0`` member is
    ``<(1, 0), (0, p)>``, so there are ``p + 2`` classes.

    Every class is checked against generators of Gamma(p) mod p^2, which
    decides the question because the classes lie between ``pZ^2`` and
    ``p^-1 Z^2``.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("need a prime p >= 5")
    out = [HomothetyLattice.from_basis([(1, g), (0, p)]) for g in range(p)]
    out.append(HomothetyLattice.from_basis([(1, 0), (0, p)]))
    out.append(HomothetyLattice.from_basis([(p, 0), (0, 1)]))
    out.append(STANDARD)
    distinct = list(dict.fromkeys(out))
    gens = gamma_p_generators(p)
    for L in distinct:
        if not all(fixes(m, L) for m in gens):
            raise AssertionError(f"{L} is not fixed by Gamma({p})")
    return distinct


# ---------------------------------------------------------------------------
# lifting and group enumeration


def lift_to_sl2z(m: IntMatrix, N: int) -> IntMatrix:
    """An integer matrix of determinant 1 congruent to ``m`` mod ``N``."""
    a, b, c, d = (x % N for x in m)
    if (a * d - b * c) % N != 1 % N:
        raise ValueError("matrix must have determinant 1 mod N")
    b1 = b if b else N
    a1 = a
    while gcd(a1, b1) != 1:
        a1 += N
    # a1 * d0 - b1 * c0 = 1
    g, x, y = _ext_gcd(a1, b1)
    d0, c0 = x, -y
    # all solutions: (c0 + t a1, d0 + t b1); match (c, d) mod N
    for t in range(N):
        cc, dd = c0 + t * a1, d0 + t * b1
        if (cc - c) % N == 0 and (dd - d) % N == 0:
            return (a1, b1, cc, dd)
    raise AssertionError("no lift found")


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def gamma_p_mod_p2(p: int):
    """Integer lifts of every element of Gamma(p) mod p^2: ``I + pX`` with
    ``tr X = 0`` mod p."""
    N = p * p
    for x1 in range(p):
        for x2 in range(p):
            for x3 in range(p):
                # det = 1 - p^2 (x1^2 + x2 x3) = 1 mod p^2
                m = (1 + p * x1, p * x2, p * x3, 1 - p * x1)
                yield lift_to_sl2z(m, N)


def gamma_p_generators(p: int) -> list[IntMatrix]:
    """Lifts generating Gamma(p) mod p^2 (a copy of the additive group of
    trace-zero matrices mod p)."""
    N = p * p
    return [(1, p, 0, 1), (1, 0, p, 1), lift_to_sl2z((1 + p, 0, 0, 1 - p), N)]


def norm_one_pairs(p: int, alpha: int | None = None) -> list[tuple[int, int]]:
    """Solutions of ``x^2 - alpha y^2 = 1`` mod p (there are ``p + 1``)."""
    alpha = build_cartan(p, alpha).alpha
    return [(x, y) for x in range(p) for y in range(p) if (x * x - alpha * y * y) % p == 1]


def cartan_fixed_sublist(p: int, alpha: int | None = None) -> list[HomothetyLattice]:
    """Members of the Gamma(p)-fixed list that are fixed by every det-1
    element of the Cartan subgroup (through integer lifts)."""
    ctx = build_cartan(p, alpha)
    lifts = [lift_to_sl2z(ctx.element(x, y).entries(), p) for x, y in norm_one_pairs(p, ctx.alpha)]
    return [L for L in gamma_p_fixed_lattices(p) if all(fixes(m, L) for m in lifts)]


def normalizer_verdict(p: int) -> GateEntry:
    """Whether the normalizer of the Cartan congruence group lies in SL2(Z),
    in which case the automorphisms it induces reduce to ``<w>``."""
    from .invariants import genus_ns

    g = genus_ns(p)
    if g < 2:
        raise ValueError(f"genus of X_ns({p}) is {g}; the argument needs genus >= 2")
    fixed = cartan_fixed_sublist(p)
    verdict = fixed == [STANDARD]
    ctx = build_cartan(p)
    return GateEntry(
        gate="normalizer_in_sl2z",
        p=p,
        verdict=verdict,
        summary="only ZxZ is fixed, so the normalizer lies in SL2(Z) and induces <w>" if verdict
        else "a lattice other than ZxZ is fixed",
        inputs={
            "genus_ns": (g, COMPUTED),
            "fixed_lattices": ([str(L) for L in fixed], COMPUTED),
            "normalizer_index": (len(ctx.normalizer_elements()) // len(ctx.cartan_elements()), COMPUTED),
        },
        expected=True,
    )


# ---------------------------------------------------------------------------
# brute-force oracle


def lattices_between(p: int) -> list[HomothetyLattice]:
    """Homothety classes of all lattices between ``p^2 Z^2`` and ``Z^2``."""
    N = p * p
    divs = [1, p, N]
    out = set()
    for a in divs:
        for d in divs:
            for b in range(d):
                # rows (a, b), (0, d) must contain (N, 0)
                if (N // a) * b % d:
                    continue
                out.add(HomothetyLattice.from_basis([(a, b), (0, d)]))
    return sorted(out, key=lambda L: (L.M, L.h, L.g))


def gamma_p_fixed_bruteforce(p: int) -> list[HomothetyLattice]:
    group = list(gamma_p_mod_p2(p))
    return [L for L in lattices_between(p) if all(fixes(m, L) for m in group)]
