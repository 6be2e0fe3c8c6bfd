"""Point counts of the non-split Cartan curves over finite fields.

Two independent engines: a moduli count (Frobenius on level structures,
summed over j-invariants) and a trace-formula count fed by Hecke eigenvalue
data of the newforms spanning the Jacobian.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .ellcurve import (
    automorphism_order,
    curve_with_j,
    frobenius_matrix_class,
    is_supersingular,
    special_j_tag,
)
from .finite_algebra import build_ext_field, is_prime
from .gl2 import CartanContext, Mat2, build_cartan, count_fixed_cosets, image_subgroups_for_special_j

VARIANTS = ("ns", "ns+")


class TraceDataError(ValueError):
    """Newform data missing or inconsistent."""


class BurnsideError(ArithmeticError):
    """Twisted Burnside sum not divisible by the size of the automorphism image."""


def _check_variant(variant: str) -> bool:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return variant == "ns+"


# ---------------------------------------------------------------------------
# cusps


def rational_cusp_count(p: int, Q: int, variant: str = "ns") -> int:
    """Cusps fixed by the Frobenius of ``F_Q``.

    The cusps of the ns curve form a torsor under ``(Z/p)^*`` on which
    Frobenius acts by multiplication by ``Q``; those of the ns+ curve are the
    orbits under ``t -> -t``.
    """
    plus = _check_variant(variant)
    if Q % p == 0:
        raise ValueError("field characteristic must differ from the level")
    Q %= p
    if plus:
        return (p - 1) // 2 if Q in (1, p - 1) else 0
    return p - 1 if Q == 1 else 0


# ---------------------------------------------------------------------------
# moduli engine


@dataclass(frozen=True)
class JContribution:
    j: int
    frobenius: str
    supersingular: bool
    points: int
    burnside_size: int = 1  # |A| for special j, else 1


@dataclass(frozen=True)
class PointCountReport:
    p: int
    q: int
    r: int
    variant: str
    method: str
    noncuspidal: int
    cusps: int
    breakdown: tuple[JContribution, ...] = ()
    supersingular_subtotal: int | None = None
    supersingular_bound: Fraction | None = None

    def __post_init__(self):
        if self.noncuspidal < 0 or self.cusps < 0:
            raise ValueError("negative count")

    @property
    def total(self) -> int:
        return self.noncuspidal + self.cusps

    @property
    def bound_holds(self) -> bool | None:
        if self.supersingular_bound is None:
            return None
        return self.supersingular_subtotal >= self.supersingular_bound

    def to_text(self) -> str:
        lines = [
            f"curve X_{self.variant}({self.p}) over F_{self.q}^{self.r}  method={self.method}",
            f"noncuspidal {self.noncuspidal}",
            f"cusps {self.cusps}",
            f"total {self.total}",
        ]
        if self.supersingular_subtotal is not None:
            lines.append(f"supersingular {self.supersingular_subtotal} >= {self.supersingular_bound}: {self.bound_holds}")
        for c in self.breakdown:
            tag = " ss" if c.supersingular else ""
            lines.append(f"  j={c.j:<6d} {c.frobenius:<22s} |A|={c.burnside_size:<3d} points={c.points}{tag}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "variant": self.variant,
            "method": self.method,
            "noncuspidal": self.noncuspidal,
            "cusps": self.cusps,
            "total": self.total,
            "supersingular_subtotal": self.supersingular_subtotal,
            "supersingular_bound": None if self.supersingular_bound is None else str(self.supersingular_bound),
            "breakdown": [c.__dict__ for c in self.breakdown],
        }


def _commuting_conjugate(rho: Mat2, zeta: Mat2) -> Mat2:
    """A matrix ``u + v*zeta`` with the trace and determinant of ``rho``.

    Frobenius commutes with the automorphisms when they are all rational, so
    in a basis adapted to a cyclic image it lies in ``F_p[zeta]``.
    """
    p = rho.p
    t, d = rho.trace, rho.det
    for u in range(p):
        for v in range(p):
            m = Mat2((u + v * zeta.a) % p, v * zeta.b, v * zeta.c, (u + v * zeta.d) % p, p)
            if m.trace == t and m.det == d:
                return m
    raise BurnsideError(f"no element of F_p[zeta] matches trace {t}, det {d}")


def _special_contribution(rho: Mat2, E, tag: str, H: str, ctx: CartanContext) -> tuple[int, int]:
    p = ctx.p
    images = image_subgroups_for_special_j(E.char, tag, p)
    A = images[0]
    aut = automorphism_order(E)
    if aut != A.order:
        raise BurnsideError(
            f"only {aut} of {A.order} automorphisms are rational over F_{E.field.order}; "
            "twisted count needs all of them"
        )
    if not rho.is_scalar():
        if not A.is_cyclic():
            raise BurnsideError("non-scalar Frobenius with a non-abelian automorphism image")
        rho = _commuting_conjugate(rho, A.generator())
    total = sum(count_fixed_cosets(a @ rho, H, ctx) for a in A.elements)
    if total % A.order:
        raise BurnsideError(f"Burnside sum {total} not divisible by |A|={A.order}")
    return total // A.order, A.order


def count_points_moduli(p: int, q: int, r: int = 2, variant: str = "ns",
                        ctx: CartanContext | None = None) -> PointCountReport:
    """``#X(F_{q^r})`` from level structures on elliptic curves over ``F_{q^r}``.

    A generic j contributes the number of Cartan cosets fixed by its Frobenius
    class. For j = 0 or 1728 the contribution is averaged over the image of
    the automorphism group.
    """
    plus = _check_variant(variant)
    if not is_prime(p) or p < 5:
        raise ValueError("level must be a prime >= 5")
    if not is_prime(q) or q == p:
        raise ValueError("q must be a prime different from p")
    H = "C+" if plus else "C"
    ctx = ctx or build_cartan(p)
    F = build_ext_field(q, r)
    contributions = []
    ss_total = 0
    for j in F.elements():
        E = curve_with_j(F, j)
        cls = frobenius_matrix_class(E, p)
        rho = cls.representative()
        tag = special_j_tag(F, j)
        if tag == "generic":
            pts, size = count_fixed_cosets(rho, H, ctx), 1
        else:
            pts, size = _special_contribution(rho, E, tag, H, ctx)
        ss = is_supersingular(E)
        if ss:
            ss_total += pts
        contributions.append(JContribution(j, str(cls), ss, pts, size))
    noncusp = sum(c.points for c in contributions)
    cusps = rational_cusp_count(p, F.order, variant)
    # each supersingular class gives at least index * 2/#Aut points (-1 acts trivially)
    index = p * (p - 1) // (2 if plus else 1)
    bound = Fraction(index * (q - 1), 12) if r == 2 else None
    report = PointCountReport(p, q, r, variant, "moduli", noncusp, cusps, tuple(contributions),
                              ss_total, bound)
    if bound is not None and not report.bound_holds:
        raise AssertionError(f"supersingular subtotal {ss_total} below {bound}\n{report.to_text()}")
    return report


# ---------------------------------------------------------------------------
# trace engine


@dataclass(frozen=True)
class NewformRecord:
    """Hecke data of one Galois orbit of newforms.

    ``traces[l]`` lists the ``dim`` eigenvalues of ``T_l``; ``charpolys[l]``
    lists the coefficients ``c0..c_dim`` of its characteristic polynomial.
    """

    level: int
    dim: int
    traces: dict[int, tuple[int, ...]] = field(default_factory=dict)
    charpolys: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise TraceDataError("dimension must be positive")
        for l, t in self.traces.items():
            if len(t) != self.dim:
                raise TraceDataError(f"T_{l}: {len(t)} eigenvalues for dimension {self.dim}")
        for l, c in self.charpolys.items():
            if len(c) != self.dim + 1:
                raise TraceDataError(f"T_{l}: polynomial degree {len(c) - 1} for dimension {self.dim}")
            if c[-1] != 1:
                raise TraceDataError(f"T_{l}: characteristic polynomial must be monic")
        for l in self.traces.keys() & self.charpolys.keys():
            if _poly_from_roots(self.traces[l]) != self.charpolys[l]:
                raise TraceDataError(f"T_{l}: eigenvalues and characteristic polynomial disagree")

    def eigen_power_sums(self, l: int, n: int) -> list[int]:
        """``[P_0, ..., P_n]`` with ``P_k`` the sum of k-th powers of the
        ``T_l`` eigenvalues."""
        if l in self.traces:
            a = self.traces[l]
            return [sum(x**k for x in a) for k in range(n + 1)]
        if l in self.charpolys:
            return newton_power_sums(self.charpolys[l], n)
        raise TraceDataError(f"level {self.level}: no T_{l} data")


def _poly_from_roots(roots) -> tuple[int, ...]:
    c = [1]
    for a in roots:
        c = [(c[i - 1] if i else 0) - a * (c[i] if i < len(c) else 0) for i in range(len(c) + 1)]
    return tuple(c)


def newton_power_sums(coeffs, n: int) -> list[int]:
    """Power sums ``P_0..P_n`` of the roots of the monic ``sum c_i x^i``."""
    d = len(coeffs) - 1
    # e_k from c_{d-k} = (-1)^k e_k
    e = [(-1) ** k * coeffs[d - k] for k in range(d + 1)]
    P = [d]
    for k in range(1, n + 1):
        s = (-1) ** (k - 1) * k * e[k] if k <= d else 0
        for i in range(1, min(k - 1, d) + 1):
            s += (-1) ** (i - 1) * e[i] * P[k - i]
        P.append(s)
    return P


def frobenius_power_sum_poly(q: int, r: int) -> list[int]:
    """Coefficients of ``s_r(a) = alpha^r + alphabar^r`` as a polynomial in
    ``a = alpha + alphabar`` where ``alpha * alphabar = q``."""
    s_prev, s = [2], [0, 1]
    if r == 0:
        return s_prev
    for _ in range(r - 1):
        nxt = [0] + s  # a * s_{k-1}
        for i, c in enumerate(s_prev):
            nxt[i] -= q * c
        s_prev, s = s, nxt
    return s


def count_points_trace(records, q: int, r: int = 2) -> int:
    """``q^r + 1 - sum of (alpha^r + alphabar^r)`` over all Hecke eigenvalues
    at ``q``, in exact integer arithmetic."""
    if not is_prime(q):
        raise ValueError("q must be prime")
    if r < 1:
        raise ValueError("r must be positive")
    poly = frobenius_power_sum_poly(q, r)
    total = 0
    for rec in records:
        if rec.level % q == 0:
            raise TraceDataError(f"q={q} divides the level {rec.level}")
        P = rec.eigen_power_sums(q, len(poly) - 1)
        total += sum(c * P[k] for k, c in enumerate(poly))
    return q**r + 1 - total


def hyperelliptic_bound_check(count: int, q: int, r: int = 2) -> bool:
    """True iff ``count`` is at most the maximum ``2(q^r + 1)`` for a
    hyperelliptic curve over ``F_{q^r}``."""
    return count <= 2 * (q**r + 1)


# ---------------------------------------------------------------------------
# newform files

_FIELD_RE = re.compile(r"^(traces|charpoly)(?:@(\d+))?:\[([^\]]*)\]$")


def parse_newform_records(text: str, source: str = "<string>") -> list[NewformRecord]:
    """One record per line: ``level dim field...`` where each field is
    ``traces[@l]:[...]`` or ``charpoly[@l]:[c0,...,cd]`` (``l`` defaults to
    2). ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        parts = line.split()
        if len(parts) < 3:
            raise TraceDataError(f"{where}: expected 'level dim data...', got {raw!r}")
        try:
            level, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise TraceDataError(f"{where}: level and dimension must be integers") from None
        traces, charpolys = {}, {}
        for fld in parts[2:]:
            m = _FIELD_RE.match(fld)
            if not m:
                raise TraceDataError(f"{where}: cannot parse field {fld!r}")
            kind, l, body = m.group(1), int(m.group(2) or 2), m.group(3)
            try:
                values = tuple(int(v) for v in body.split(",") if v.strip())
            except ValueError:
                raise TraceDataError(f"{where}: non-integer entry in {fld!r}") from None
            target = traces if kind == "traces" else charpolys
            if l in target:
                raise TraceDataError(f"{where}: duplicate {kind} for T_{l}")
            target[l] = values
        try:
            out.append(NewformRecord(level, dim, traces, charpolys))
        except TraceDataError as exc:
            raise TraceDataError(f"{where}: {exc}") from None
    return out


def load_newform_records(path) -> list[NewformRecord]:
    path = Path(path)
    return parse_newform_records(path.read_text(), str(path))


def bundled_records(level: int) -> list[NewformRecord]:
    """Newform data shipped with the package (levels 121 and 169)."""
    name = f"level{level}.txt"
    res = resources.files("nscartan") / "data" / name
    if not res.is_file():
        raise FileNotFoundError(f"no bundled newform data for level {level}")
    return parse_newform_records(res.read_text(), name)
