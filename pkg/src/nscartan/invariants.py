"""Genera, elliptic points, cusps and class numbers attached to the
non-split Cartan curves and to X_0(N)."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .finite_algebra import is_prime, legendre, prime_factors
from .gl2 import CartanContext, Mat2, build_cartan, count_fixed_cosets


def _require_level(p: int):
    if not is_prime(p) or p < 5:
        raise ValueError(f"level must be a prime >= 5, got {p}")


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {x}")
    return int(x)


@dataclass(frozen=True)
class RamificationData:
    """Fixed-coset counts of the standard elliptic and parabolic generators
    of SL2(Z) acting on the cosets of a Cartan subgroup."""

    degree: int
    nu2: int
    nu3: int
    cusps: int

    @property
    def genus(self) -> int:
        n = self.degree
        two_g_minus_2 = -2 * n + Fraction(n - self.nu2, 2) + Fraction(2 * (n - self.nu3), 3) + (n - self.cusps)
        return _as_int(two_g_minus_2 / 2 + 1, "Riemann-Hurwitz genus")


def ramification_data(p: int, plus: bool = False, ctx: CartanContext | None = None) -> RamificationData:
    ctx = ctx or build_cartan(p)
    return _ramification(ctx, plus)


@lru_cache(maxsize=None)
def _ramification(ctx: CartanContext, plus: bool) -> RamificationData:
    p = ctx.p
    H = "C+" if plus else "C"
    S = Mat2(0, -1, 1, 0, p)  # order 4
    R = Mat2(0, -1, 1, 1, p)  # order 6
    T = Mat2(1, 1, 0, 1, p)
    n = ctx.index(plus)
    nu2 = count_fixed_cosets(S, H, ctx)
    nu3 = count_fixed_cosets(R, H, ctx)
    # cusps are orbits of <T>, counted by Burnside
    fixed = sum(count_fixed_cosets(T**k, H, ctx) for k in range(p))
    if fixed % p:
        raise ArithmeticError("orbit count of the unipotent subgroup is not integral")
    return RamificationData(n, nu2, nu3, fixed // p)


def nu_closed_form(p: int) -> tuple[int, int]:
    return 2 * (p % 4 == 3), 2 * (p % 3 == 2)


def genus_ns_closed_form(p: int) -> int:
    nu2, nu3 = nu_closed_form(p)
    g = 1 + Fraction(p * (p - 1), 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(p - 1, 2)
    return _as_int(g, "closed-form genus")


def genus_ns(p: int, ctx: CartanContext | None = None) -> int:
    """Genus of X_ns(p), by Riemann-Hurwitz over the j-line and by the closed
    form; the two must agree."""
    _require_level(p)
    g = ramification_data(p, False, ctx).genus
    closed = genus_ns_closed_form(p)
    if g != closed:
        raise AssertionError(f"genus of X_ns({p}): Riemann-Hurwitz {g} vs closed form {closed}")
    return g


def fixed_w(p: int) -> int:
    """Fixed points of the involution of X_ns(p) over X_ns+(p) (externally
    sourced count, cross-checked by the two genus computations)."""
    _require_level(p)
    return (p - 1) // 2 if p % 4 == 1 else (p + 1) // 2


def genus_ns_plus(p: int, ctx: CartanContext | None = None) -> int:
    """Genus of X_ns+(p) from the double cover, checked against
    Riemann-Hurwitz for the normalizer cosets."""
    _require_level(p)
    g = genus_ns(p, ctx)
    gp = _as_int(Fraction(2 * g - 2 - fixed_w(p), 4) + 1, "double-cover genus")
    rh = ramification_data(p, True, ctx).genus
    if gp != rh:
        raise AssertionError(f"genus of X_ns+({p}): double cover {gp} vs Riemann-Hurwitz {rh}")
    return gp


def _kronecker_small(d: int, l: int) -> int:
    """Kronecker symbol (d/l) for prime l and d in {-3, -4}."""
    if l == 2:
        return 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
    return legendre(d, l) if d % l else 0


def genus_X0(N: int) -> int:
    """Genus of X_0(N) from the index, elliptic points and cusps of Gamma_0(N)."""
    if N < 1:
        raise ValueError("N must be positive")
    ls = prime_factors(N)
    mu = Fraction(N)
    for l in ls:
        mu *= Fraction(l + 1, l)
    nu2 = 0
    if N % 4:
        nu2 = 1
        for l in ls:
            nu2 *= 1 + _kronecker_small(-4, l)
    nu3 = 0
    if N % 9:
        nu3 = 1
        for l in ls:
            nu3 *= 1 + _kronecker_small(-3, l)
    cusps = sum(_euler_phi(gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)
    g = 1 + mu / 12 - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2)
    return _as_int(g, f"genus of X_0({N})")


def _euler_phi(n: int) -> int:
    out = n
    for l in prime_factors(n):
        out = out // l * (l - 1)
    return out


def newpart_dim_check(p: int) -> tuple[bool, str]:
    """Compare genus_ns(p) with the dimension of the new part of J_0(p^2)."""
    g = genus_ns(p)
    new = genus_X0(p * p) - 2 * genus_X0(p)
    ok = g == new
    msg = f"genus_ns({p})={g}, g0({p * p})-2*g0({p})={new}"
    return ok, msg


# ---------------------------------------------------------------------------
# class numbers


def _check_class_number_prime(p: int):
    if not is_prime(p) or p % 4 != 3 or p == 3:
        raise ValueError(f"need a prime p = 3 mod 4 with p > 3, got {p}")


def class_number(p: int) -> int:
    """h(-p) from the Legendre-symbol sum."""
    _check_class_number_prime(p)
    s = sum(m * legendre(m, p) for m in range(1, p))
    h = _as_int(Fraction(-s, p), "class number")
    if not 0 < h <= (p - 1) // 2:
        raise AssertionError(f"h(-{p})={h} outside (0, (p-1)/2]")
    return h


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced positive definite forms ``(a, b, c)`` with ``b^2 - 4ac = D``."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("D must be a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            out.append((a, b, c))
        a += 1
    return out


def class_number_forms(p: int) -> int:
    """h(-p) by counting reduced forms."""
    _check_class_number_prime(p)
    return len(reduced_forms(-p))


def cm_split(p: int) -> tuple[int, int]:
    """(CM part, non-CM part) of the dimension of the Jacobian of X_ns(p)."""
    g = genus_ns(p)
    gc = 0 if p % 4 == 1 else class_number(p)
    if gc > g:
        raise AssertionError("CM part exceeds the genus")
    return gc, g - gc


def genus_gap_holds(p: int) -> bool:
    return genus_ns(p) > p


def cm_estimate_holds(p: int) -> bool:
    """Whether ``g_ns(p) <= 2 g_C(p) + 1``."""
    gc, gh = cm_split(p)
    return gc + gh <= 2 * gc + 1


@dataclass(frozen=True)
class CurveInvariants:
    p: int
    genus_ns: int
    genus_ns_plus: int
    cusps_ns: int
    cusps_ns_plus: int
    nu2: int
    nu3: int
    fixed_w: int
    g_C: int
    g_H: int
    quadratic_subfield: str  # "real" or "imaginary"
    fixed_w_source: str = "external"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        return "".join(f"{k} {v}\n" for k, v in self.to_dict().items())


def curve_invariants(p: int, ctx: CartanContext | None = None) -> CurveInvariants:
    _require_level(p)
    ctx = ctx or build_cartan(p)
    ram = ramification_data(p, False, ctx)
    g = genus_ns(p, ctx)
    gp = genus_ns_plus(p, ctx)
    if 2 * g - 2 != 2 * (2 * gp - 2) + fixed_w(p):
        raise AssertionError("double-cover relation fails")
    gc, gh = cm_split(p)
    return CurveInvariants(
        p=p,
        genus_ns=g,
        genus_ns_plus=gp,
        cusps_ns=ram.cusps,
        cusps_ns_plus=ramification_data(p, True, ctx).cusps,
        nu2=ram.nu2,
        nu3=ram.nu3,
        fixed_w=fixed_w(p),
        g_C=gc,
        g_H=gh,
        quadratic_subfield="real" if p % 4 == 1 else "imaginary",
    )

