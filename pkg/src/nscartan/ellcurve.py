"""Elliptic curves over small finite fields.

Point counts, supersingularity, automorphism groups, the supersingular mass,
division polynomials and the class of Frobenius acting on p-torsion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

from . import kernels
from .finite_algebra import FiniteField, Polynomial, build_ext_field, is_prime, prime_factors
from .gl2 import FrobeniusClass, class_from_charpoly


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over ``field``."""

    field: FiniteField
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"singular curve {self.coeffs} over {self.field}")

    @classmethod
    def short(cls, field: FiniteField, a: int, b: int) -> "WeierstrassCurve":
        return cls(field, 0, 0, 0, a, b)

    @classmethod
    def from_ints(cls, field: FiniteField, coeffs) -> "WeierstrassCurve":
        return cls(field, *(field.from_int(c) for c in coeffs))

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def char(self) -> int:
        return self.field.char

    def _c(self, n: int) -> int:
        return self.field.from_int(n)

    @cached_property
    def b_invariants(self) -> tuple[int, int, int, int]:
        F = self.field
        a1, a2, a3, a4, a6 = self.coeffs
        m, add, sub, c = F.mul, F.add, F.sub, self._c
        b2 = add(m(a1, a1), m(c(4), a2))
        b4 = add(m(c(2), a4), m(a1, a3))
        b6 = add(m(a3, a3), m(c(4), a6))
        b8 = sub(add(add(m(m(a1, a1), a6), m(c(4), m(a2, a6))), m(a2, m(a3, a3))),
                 add(m(a1, m(a3, a4)), m(a4, a4)))
        return b2, b4, b6, b8

    @cached_property
    def discriminant(self) -> int:
        F = self.field
        b2, b4, b6, b8 = self.b_invariants
        m, add, c = F.mul, F.add, self._c
        terms = [
            m(F.neg(m(b2, b2)), b8),
            m(c(-8), m(b4, m(b4, b4))),
            m(c(-27), m(b6, b6)),
            m(c(9), m(b2, m(b4, b6))),
        ]
        return F.sum(terms)

    @cached_property
    def c4(self) -> int:
        F = self.field
        b2, b4, _, _ = self.b_invariants
        return F.sub(F.mul(b2, b2), F.mul(self._c(24), b4))

    @cached_property
    def j_invariant(self) -> int:
        F = self.field
        return F.div(F.pow(self.c4, 3), self.discriminant)

    def base_change(self, other: FiniteField) -> "WeierstrassCurve":
        """Same equation over ``other``; needs prime-field coefficients, whose
        encodings agree in every extension."""
        if other.char != self.char:
            raise ValueError("base change needs the same characteristic")
        if any(not self.field.in_prime_subfield(a) for a in self.coeffs):
            raise ValueError("base change only supported for curves over the prime field")
        return WeierstrassCurve(other, *self.coeffs)

    # -- points --------------------------------------------------------------

    def contains(self, P) -> bool:
        if P is None:
            return True
        F = self.field
        x, y = P
        a1, a2, a3, a4, a6 = self.coeffs
        lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(a1, x), a3)))
        x2 = F.mul(x, x)
        rhs = F.sum([F.mul(x2, x), F.mul(a2, x2), F.mul(a4, x), a6])
        return lhs == rhs

    def points(self):
        """All affine points, then ``None`` for the point at infinity."""
        F = self.field
        out = [(x, y) for x in F.elements() for y in F.elements() if self.contains((x, y))]
        out.append(None)
        return out

    def negate(self, P):
        if P is None:
            return None
        F = self.field
        x, y = P
        return (x, F.sub(F.neg(y), F.add(F.mul(self.a1, x), self.a3)))

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        F = self.field
        a1, a2, a3, a4, a6 = self.coeffs
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and F.add(F.add(y1, y2), F.add(F.mul(a1, x2), a3)) == 0:
            return None
        if x1 != x2:
            dx = F.sub(x2, x1)
            lam = F.div(F.sub(y2, y1), dx)
            nu = F.div(F.sub(F.mul(y1, x2), F.mul(y2, x1)), dx)
        else:
            den = F.add(F.add(F.mul(self._c(2), y1), F.mul(a1, x1)), a3)
            x1sq = F.mul(x1, x1)
            lam = F.div(F.sum([F.mul(self._c(3), x1sq), F.mul(self._c(2), F.mul(a2, x1)), a4,
                               F.neg(F.mul(a1, y1))]), den)
            nu = F.div(F.sum([F.neg(F.mul(x1sq, x1)), F.mul(a4, x1), F.mul(self._c(2), a6),
                              F.neg(F.mul(a3, y1))]), den)
        x3 = F.sum([F.mul(lam, lam), F.mul(a1, lam), F.neg(a2), F.neg(x1), F.neg(x2)])
        y3 = F.sub(F.neg(F.mul(F.add(lam, a1), x3)), F.add(nu, a3))
        return (x3, y3)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.negate(P))
        out, base = None, P
        while n:
            if n & 1:
                out = self.add(out, base)
            base = self.add(base, base)
            n >>= 1
        return out


# ---------------------------------------------------------------------------
# counting and supersingularity


def point_count(E: WeierstrassCurve, field: FiniteField | None = None) -> int:
    """``#E(F)`` including the point at infinity, scanning every x-coordinate.

    ``field`` defaults to the curve's own field; otherwise the curve is base
    changed (prime-field coefficients only).
    """
    if field is not None and field is not E.field:
        E = E.base_change(field)
    n = kernels.count_points_xscan(E.field, E.coeffs)
    q = E.field.order
    t = q + 1 - n
    if t * t > 4 * q:
        raise AssertionError(f"Hasse bound violated: #E={n} over F_{q}")
    return n


def frobenius_trace(E: WeierstrassCurve) -> int:
    return E.field.order + 1 - point_count(E)


def is_supersingular(E: WeierstrassCurve) -> bool:
    return frobenius_trace(E) % E.char == 0


def automorphisms(E: WeierstrassCurve) -> list[tuple[int, int, int, int]]:
    """Substitutions ``(u, r, s, t)`` over the curve's field mapping the
    equation to itself.

    Every ``u`` is scanned; ``s``, ``r``, ``t`` are solved from the linear
    transformation rules where the characteristic allows it and scanned
    otherwise.
    """
    F = E.field
    a1, a2, a3, a4, a6 = E.coeffs
    char = F.char
    m, add, sub, c = F.mul, F.add, F.sub, E._c
    inv2 = F.inv(c(2)) if char != 2 else None
    inv3 = F.inv(c(3)) if char not in (2, 3) else None
    out = []
    for u in range(1, F.order):
        u2 = m(u, u)
        u3 = m(u2, u)
        u4 = m(u2, u2)
        u6 = m(u3, u3)
        ss = [m(sub(m(u, a1), a1), inv2)] if inv2 is not None else F.elements()
        for s in ss:
            if inv3 is not None:
                rs = [m(sub(add(sub(m(u2, a2), a2), m(s, a1)), F.neg(m(s, s))), inv3)]
            else:
                rs = F.elements()
            for r in rs:
                if inv2 is not None:
                    ts = [m(sub(sub(m(u3, a3), a3), m(r, a1)), inv2)]
                else:
                    ts = F.elements()
                for t in ts:
                    if m(u, a1) != add(a1, m(c(2), s)):
                        continue
                    if m(u2, a2) != F.sum([a2, F.neg(m(s, a1)), m(c(3), r), F.neg(m(s, s))]):
                        continue
                    if m(u3, a3) != F.sum([a3, m(r, a1), m(c(2), t)]):
                        continue
                    rhs4 = F.sum([a4, F.neg(m(s, a3)), m(c(2), m(r, a2)), F.neg(m(add(t, m(r, s)), a1)),
                                  m(c(3), m(r, r)), F.neg(m(c(2), m(s, t)))])
                    if m(u4, a4) != rhs4:
                        continue
                    rhs6 = F.sum([a6, m(r, a4), m(m(r, r), a2), m(m(r, r), r), F.neg(m(t, a3)),
                                  F.neg(m(t, t)), F.neg(m(m(r, t), a1))])
                    if m(u6, a6) != rhs6:
                        continue
                    out.append((u, r, s, t))
    return out


def automorphism_order(E: WeierstrassCurve) -> int:
    n = len(automorphisms(E))
    if n % 2:
        raise AssertionError("automorphism group of odd order")
    return n


# ---------------------------------------------------------------------------
# curve families


def curve_with_j(F: FiniteField, j: int) -> WeierstrassCurve:
    """Canonical curve over ``F`` with j-invariant ``j``."""
    char = F.char
    c = F.from_int
    if char == 2:
        E = WeierstrassCurve(F, 0, 0, 1, 0, 0) if j == 0 else WeierstrassCurve(F, 1, 0, 0, 0, F.inv(j))
    elif char == 3:
        E = WeierstrassCurve(F, 0, 0, 0, c(-1), 0) if j == 0 else WeierstrassCurve(F, 0, 1, 0, 0, F.neg(F.inv(j)))
    elif j == 0:
        E = WeierstrassCurve(F, 0, 0, 0, 0, 1)
    elif j == c(1728):
        E = WeierstrassCurve(F, 0, 0, 0, 1, 0)
    else:
        k = F.div(F.mul(c(27), j), F.mul(c(4), F.sub(c(1728), j)))
        E = WeierstrassCurve(F, 0, 0, 0, k, k)
    if E.j_invariant != j:
        raise AssertionError(f"curve_with_j produced j={E.j_invariant}, wanted {j}")
    return E


def special_j_tag(F: FiniteField, j: int) -> str:
    if j == 0:
        return "0"
    if j == F.from_int(1728):
        return "1728"
    return "generic"


def enumerate_curves(F: FiniteField):
    """Nonsingular curves in the per-characteristic canonical family:
    ``y^2 = x^3 + a x + b`` (char >= 5), ``y^2 = x^3 + a2 x^2 + a4 x + a6``
    (char 3), full Weierstrass form (char 2)."""
    els = F.elements()
    if F.char >= 5:
        shapes = ((0, 0, 0, a, b) for a in els for b in els)
    elif F.char == 3:
        shapes = ((0, a2, 0, a4, a6) for a2 in els for a4 in els for a6 in els)
    else:
        shapes = ((a1, a2, a3, a4, a6) for a1 in els for a2 in els for a3 in els for a4 in els for a6 in els)
    for co in shapes:
        try:
            yield WeierstrassCurve(F, *co)
        except ValueError:
            continue


# ---------------------------------------------------------------------------
# supersingular inventory


@dataclass(frozen=True)
class SupersingularInventory:
    q: int
    char: int
    entries: tuple[tuple[int, int], ...]  # (j encoding in F_{char^2}, #Aut)
    stable_degree: int  # extension degree over F_char where Aut orders were confirmed stable

    @property
    def mass(self) -> Fraction:
        return sum((Fraction(1, n) for _, n in self.entries), Fraction(0))

    @property
    def expected_mass(self) -> Fraction:
        return Fraction(self.char - 1, 24)


def _supersingular_scan(char: int, k: int) -> list[tuple[int, int]]:
    L = build_ext_field(char, 2 * k)
    sub_order = char**2
    out = []
    for j in L.elements():
        if L.pow(j, sub_order) != j:
            continue
        E = curve_with_j(L, j)
        if is_supersingular(E):
            out.append((j, automorphism_order(E)))
    return out


def supersingular_inventory(q: int, max_field: int = 2**16) -> SupersingularInventory:
    """Supersingular j-invariants in characteristic ``char(q)`` with the order
    of their geometric automorphism group.

    The j's live in ``F_{char^2}``. Automorphism orders are computed over
    ``F_{char^2}`` and again over ``F_{char^4}`` (when that field is within
    ``max_field``); disagreement raises.
    """
    factors = prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    char = factors[0]
    base = _supersingular_scan(char, 1)
    stable = 2
    if char**4 <= max_field:
        wider = _supersingular_scan(char, 2)
        if sorted(n for _, n in wider) != sorted(n for _, n in base):
            raise AssertionError(f"automorphism orders not stable between F_{char}^2 and F_{char}^4")
        stable = 4
    inv = SupersingularInventory(q, char, tuple(base), stable)
    if inv.mass != inv.expected_mass:
        raise AssertionError(f"mass {inv.mass} != {inv.expected_mass} for q={q}")
    return inv


# ---------------------------------------------------------------------------
# division polynomials and Frobenius on p-torsion


class DivisionPolynomials:
    """``f_m`` in ``F[x]`` with ``psi_m = f_m`` (m odd) and
    ``psi_m = psi_2 f_m`` (m even); ``psi_2^2`` is the cubic ``four_f``."""

    def __init__(self, E: WeierstrassCurve):
        self.E = E
        F = E.field
        b2, b4, b6, b8 = E.b_invariants
        c = F.from_int
        P = lambda *cs: Polynomial(F, tuple(cs))
        self.four_f = P(b6, F.mul(c(2), b4), b2, c(4))
        self._cache = {
            0: P(),
            1: P(1),
            2: P(1),
            3: P(b8, F.mul(c(3), b6), F.mul(c(3), b4), b2, c(3)),
            4: P(
                F.sub(F.mul(b4, b8), F.mul(b6, b6)),
                F.sub(F.mul(b2, b8), F.mul(b4, b6)),
                F.mul(c(10), b8),
                F.mul(c(10), b6),
                F.mul(c(5), b4),
                b2,
                c(2),
            ),
        }

    def f(self, m: int) -> Polynomial:
        if m < 0:
            return -self.f(-m)
        if m in self._cache:
            return self._cache[m]
        k = m // 2
        F2sq = self.four_f * self.four_f
        if m % 2:
            if k % 2 == 0:
                val = F2sq * self.f(k + 2) * self.f(k) ** 3 - self.f(k - 1) * self.f(k + 1) ** 3
            else:
                val = self.f(k + 2) * self.f(k) ** 3 - F2sq * self.f(k - 1) * self.f(k + 1) ** 3
        else:
            val = self.f(k) * (self.f(k + 2) * self.f(k - 1) ** 2 - self.f(k - 2) * self.f(k + 1) ** 2)
        self._cache[m] = val
        return val

    def psi_squared(self, m: int) -> Polynomial:
        """``psi_m^2`` as a polynomial in x."""
        fm = self.f(m)
        return fm * fm * (self.four_f if m % 2 == 0 else 1)

    def psi_prev_next(self, m: int) -> Polynomial:
        """``psi_{m-1} psi_{m+1}`` as a polynomial in x."""
        prod = self.f(m - 1) * self.f(m + 1)
        return prod * self.four_f if m % 2 else prod


def division_polynomial(E: WeierstrassCurve, m: int) -> Polynomial:
    """``psi_m`` for odd ``m`` (a polynomial in x of degree ``(m^2 - 1)/2``)."""
    if m % 2 == 0 or m < 1:
        raise ValueError("only odd m give a polynomial in x alone")
    if E.char == m:
        raise ValueError("characteristic must not equal m")
    return DivisionPolynomials(E).f(m)


def frobenius_acts_as_scalar(E: WeierstrassCurve, p: int, lam: int) -> bool:
    """Whether the field Frobenius ``(x, y) -> (x^Q, y^Q)`` equals ``[lam]`` on
    ``E[p]``, decided modulo ``psi_p``.

    Compares x-coordinates after clearing denominators, so no inversion in
    ``F[x]/(psi_p)`` is needed: ``psi_mu`` has no root at a point of exact
    order p. Matching x-coordinates on all of ``E[p]`` forces Frobenius to be
    ``+-lam`` pointwise, which for a linear map with eigenvalue ``lam`` means
    ``lam`` times the identity.
    """
    lam %= p
    if lam == 0:
        raise ValueError("eigenvalue must be a unit mod p")
    mu = min(lam, p - lam)
    dp = DivisionPolynomials(E)
    psi_p = dp.f(p)
    F = E.field
    x = Polynomial.x(F)
    xq = x.powmod(F.order, psi_p)
    if mu == 1:
        return (xq - x) % psi_p == Polynomial(F, ())
    den = dp.psi_squared(mu) % psi_p
    num = (x * den - dp.psi_prev_next(mu)) % psi_p
    return (xq * den - num) % psi_p == Polynomial(F, ())


def frobenius_matrix_class(E: WeierstrassCurve, p: int) -> FrobeniusClass:
    """Conjugacy class of Frobenius (relative to the curve's field) on ``E[p]``."""
    if not is_prime(p) or p == 2:
        raise ValueError("level must be an odd prime")
    if p == E.char:
        raise ValueError("level must differ from the characteristic")
    Q = E.field.order
    t = Q + 1 - point_count(E)
    disc = (t * t - 4 * Q) % p
    if disc:
        return class_from_charpoly(t, Q, p)
    lam = t * pow(2, -1, p) % p
    return class_from_charpoly(t, Q, p, scalar=frobenius_acts_as_scalar(E, p, lam))


def hasse_bound_ok(n: int, q: int) -> bool:
    t = q + 1 - n
    return t * t <= 4 * q and isqrt(4 * q) >= abs(t)
