"""GL2(F_p): a fixed non-split Cartan subgroup, its normalizer, coset scans
and the conjugacy classification of Frobenius-type matrices."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .finite_algebra import is_prime, legendre, nonsquares

DEFAULT_P_BOUND = 97


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)

    @classmethod
    def identity(cls, p):
        return cls(1, 0, 0, 1, p)

    @classmethod
    def scalar(cls, lam, p):
        return cls(lam, 0, 0, lam, p)

    @classmethod
    def decode(cls, code: int, p: int) -> "Mat2":
        a, r = code % p, code // p
        b, r = r % p, r // p
        c, d = r % p, r // p
        return cls(a, b, c, d, p)

    def encode(self) -> int:
        """``a + p b + p^2 c + p^3 d``."""
        p = self.p
        return self.a + p * (self.b + p * (self.c + p * self.d))

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.p

    def is_invertible(self) -> bool:
        return self.det != 0

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.p,
        )

    def __mul__(self, k: int) -> "Mat2":
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def inverse(self) -> "Mat2":
        det = self.det
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        di = pow(det, -1, self.p)
        return Mat2(self.d * di, -self.b * di, -self.c * di, self.a * di, self.p)

    def __pow__(self, e: int) -> "Mat2":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Mat2.identity(self.p), self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def conj(self, g: "Mat2") -> "Mat2":
        """``g self g^-1``."""
        return g @ self @ g.inverse()

    def order(self) -> int:
        m, k = self, 1
        ident = Mat2.identity(self.p)
        while m != ident:
            m = m @ self
            k += 1
        return k

    def charpoly(self) -> tuple[int, int]:
        """``(trace, det)``, i.e. ``x^2 - trace x + det``."""
        return self.trace, self.det


def iter_gl2(p: int) -> Iterator[Mat2]:
    """GL2(F_p) in row-major order (a slowest, d fastest)."""
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p:
                        yield Mat2(a, b, c, d, p)


def iter_sl2(p: int) -> Iterator[Mat2]:
    return (m for m in iter_gl2(p) if m.det == 1)


def iter_sl2_with_trace(p: int, t: int) -> Iterator[Mat2]:
    """Elements of SL2(F_p) with trace ``t``, in row-major order."""
    t %= p
    for a in range(p):
        d = (t - a) % p
        bc = (a * d - 1) % p
        for b in range(p):
            if b:
                yield Mat2(a, b, bc * pow(b, -1, p), d, p)
            elif bc == 0:
                for c in range(p):
                    yield Mat2(a, 0, c, d, p)


# ---------------------------------------------------------------------------
# Frobenius classes


@dataclass(frozen=True)
class FrobeniusClass:
    """Conjugacy data of a matrix in GL2(F_p).

    ``kind`` is one of ``"scalar"``, ``"nonsplit"``, ``"split"``, ``"jordan"``;
    ``eigenvalues`` is ``(l,)`` for scalar/jordan, ``(l1, l2)`` with
    ``l1 < l2`` for split and empty for nonsplit.
    """

    kind: str
    p: int
    trace: int
    det: int
    eigenvalues: tuple[int, ...] = ()

    @property
    def charpoly_coeffs(self) -> tuple[int, int, int]:
        """Coefficients ``[c0, c1, c2]`` of ``x^2 - t x + d`` mod p."""
        return (self.det % self.p, -self.trace % self.p, 1)

    def representative(self) -> Mat2:
        p = self.p
        if self.kind == "scalar":
            return Mat2.scalar(self.eigenvalues[0], p)
        if self.kind == "jordan":
            lam = self.eigenvalues[0]
            return Mat2(lam, 1, 0, lam, p)
        if self.kind == "split":
            l1, l2 = self.eigenvalues
            return Mat2(l1, 0, 0, l2, p)
        return Mat2(0, -self.det, 1, self.trace, p)

    def __str__(self):
        if self.kind == "nonsplit":
            return f"NonSplit(x^2 - {self.trace}x + {self.det} mod {self.p})"
        name = {"scalar": "Scalar", "jordan": "Jordan", "split": "SplitDistinct"}[self.kind]
        return f"{name}({', '.join(map(str, self.eigenvalues))})"


def class_from_charpoly(trace: int, det: int, p: int, scalar: bool | None = None) -> FrobeniusClass:
    """Classify ``x^2 - trace x + det``; for a double root, ``scalar`` decides
    between Scalar and Jordan and must be given."""
    trace, det = trace % p, det % p
    if det == 0:
        raise ValueError("singular characteristic polynomial")
    disc = (trace * trace - 4 * det) % p
    if disc == 0:
        if scalar is None:
            raise ValueError("double root: scalar/jordan must be decided by the caller")
        lam = trace * pow(2, -1, p) % p
        return FrobeniusClass("scalar" if scalar else "jordan", p, trace, det, (lam,))
    if legendre(disc, p) == -1:
        return FrobeniusClass("nonsplit", p, trace, det)
    roots = sorted(x for x in range(p) if (x * x - trace * x + det) % p == 0)
    return FrobeniusClass("split", p, trace, det, tuple(roots))


def classify(m: Mat2) -> FrobeniusClass:
    if not m.is_invertible():
        raise ValueError("classify needs an invertible matrix")
    disc = (m.trace**2 - 4 * m.det) % m.p
    return class_from_charpoly(m.trace, m.det, m.p, scalar=m.is_scalar() if disc == 0 else None)


# ---------------------------------------------------------------------------
# Cartan context


@dataclass(frozen=True)
class CartanContext:
    """A non-split Cartan subgroup ``C = {[[x, alpha y], [y, x]]}`` of GL2(F_p)
    and its normalizer ``C+ = C u C [[1, 0], [0, -1]]``."""

    p: int
    alpha: int
    scan: int = kernels.SCAN_ROW
    _reps: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if legendre(self.alpha, self.p) != -1:
            raise ValueError(f"alpha={self.alpha} is a square mod {self.p}")

    def element(self, x: int, y: int) -> Mat2:
        return Mat2(x, self.alpha * y, y, x, self.p)

    @property
    def reflection(self) -> Mat2:
        return Mat2(1, 0, 0, -1, self.p)

    def cartan_elements(self) -> list[Mat2]:
        p = self.p
        return [self.element(x, y) for x in range(p) for y in range(p) if x or y]

    def normalizer_elements(self) -> list[Mat2]:
        s = self.reflection
        cs = self.cartan_elements()
        return cs + [m @ s for m in cs]

    def member_codes(self, plus: bool = False) -> np.ndarray:
        """Sorted encodings ``a + p b + p^2 c + p^3 d`` of C or C+."""
        ms = self.normalizer_elements() if plus else self.cartan_elements()
        return np.array(sorted(m.encode() for m in ms), dtype=np.int64)

    def contains(self, m: Mat2, plus: bool = False) -> bool:
        p, al = self.p, self.alpha
        if not m.is_invertible():
            return False
        if m.a == m.d and m.b == al * m.c % p:
            return True
        return plus and (m.a + m.d) % p == 0 and (m.b + al * m.c) % p == 0

    def index(self, plus: bool = False) -> int:
        p = self.p
        return p * (p - 1) // 2 if plus else p * (p - 1)

    def coset_reps(self, plus: bool = False) -> np.ndarray:
        """Coset representatives of ``H \\ GL2`` as an ``(n, 4)`` int array,
        first element of each coset in the context's scan order."""
        if plus not in self._reps:
            H = np.array([m.entries() for m in (self.normalizer_elements() if plus else self.cartan_elements())],
                         dtype=np.int64)
            self._reps[plus] = kernels.greedy_coset_reps(self.p, H, self.scan)
        return self._reps[plus]

    def subgroup_tag(self, H: str) -> bool:
        if H in ("C", "ns"):
            return False
        if H in ("C+", "ns+", "C^+"):
            return True
        raise ValueError(f"unknown subgroup tag {H!r}")


@lru_cache(maxsize=64)
def _cached_cartan(p: int, alpha: int, scan: int) -> CartanContext:
    return CartanContext(p, alpha, scan)


def build_cartan(p: int, alpha: int | None = None, scan: int = kernels.SCAN_ROW,
                 pmax: int = DEFAULT_P_BOUND) -> CartanContext:
    """Cartan context for ``5 <= p <= pmax``; ``alpha`` defaults to the
    smallest non-residue."""
    if not is_prime(p) or p < 5:
        raise ValueError(f"need a prime p >= 5, got {p}")
    if p > pmax:
        raise ValueError(f"p={p} exceeds the enumeration bound {pmax}")
    if alpha is None:
        alpha = next(nonsquares(p))
    return _cached_cartan(p, alpha % p, scan)


def count_fixed_cosets(x: Mat2, H: str, ctx: CartanContext) -> int:
    """Number of cosets ``H g`` with ``g x g^-1`` in ``H``, by exhaustive scan."""
    if not x.is_invertible():
        raise ValueError("x must be invertible")
    plus = ctx.subgroup_tag(H)
    return kernels.count_fixed(ctx.coset_reps(plus), x.entries(), ctx.p, ctx.alpha, plus)


def count_fixed_cosets_closed_form(cls: FrobeniusClass, H: str) -> int:
    """Fixed-coset count from centralizer orders: ``|Z(x)| |x^G n H| / |H|``."""
    p = cls.p
    plus = H in ("C+", "ns+", "C^+")
    if cls.kind == "scalar":
        return p * (p - 1) // (2 if plus else 1)
    if cls.kind == "jordan":
        return 0
    if not plus:
        return 2 if cls.kind == "nonsplit" else 0
    # C+ \ C consists of the trace-zero matrices [[x, -a y], [y, -x]]; each
    # nonzero determinant is hit by p + 1 of them.
    in_c = 2 if cls.kind == "nonsplit" else 0
    in_rest = p + 1 if cls.trace == 0 else 0
    centralizer = p * p - 1 if cls.kind == "nonsplit" else (p - 1) ** 2
    return centralizer * (in_c + in_rest) // (2 * (p * p - 1))


# ---------------------------------------------------------------------------
# elliptic elements and automorphism images


def elliptic_element_existence(p: int, ctx: CartanContext | None = None) -> tuple[bool, bool]:
    """Whether ``C n SL2`` holds elements with characteristic polynomial
    ``x^2 + 1`` resp. ``x^2 + x + 1``; checked by search and by congruence."""
    if not is_prime(p) or p < 5:
        raise ValueError("need a prime p >= 5")
    ctx = ctx or build_cartan(p)
    order4 = order3 = False
    for m in ctx.cartan_elements():
        if m.det != 1:
            continue
        order4 |= m.trace == 0
        order3 |= m.trace == p - 1
    expected = (p % 4 == 3, p % 3 == 2)
    if (order4, order3) != expected:
        raise AssertionError(f"search {(order4, order3)} disagrees with congruences {expected} at p={p}")
    return order4, order3


@dataclass(frozen=True)
class Subgroup:
    label: str
    elements: tuple[Mat2, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def order_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for m in self.elements:
            k = m.order()
            prof[k] = prof.get(k, 0) + 1
        return dict(sorted(prof.items()))

    def generator(self) -> Mat2:
        """An element of maximal order (the generator when cyclic)."""
        return max(self.elements, key=lambda m: (m.order(), -m.encode()))

    def is_cyclic(self) -> bool:
        return self.generator().order() == self.order


def _closure(gens: list[Mat2], limit: int) -> list[Mat2] | None:
    p = gens[0].p
    seen = {Mat2.identity(p)}
    frontier = [Mat2.identity(p)]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = m @ g
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        return None
                    nxt.append(h)
        frontier = nxt
    return sorted(seen, key=Mat2.encode)


# Element-order profiles that pin down the isomorphism type among groups of
# the same order with a unique involution.
_PROFILES = {
    "C2": {1: 1, 2: 1},
    "C4": {1: 1, 2: 1, 4: 2},
    "C6": {1: 1, 2: 1, 3: 2, 6: 2},
    "Dic12": {1: 1, 2: 1, 3: 2, 4: 6, 6: 2},
    "SL(2,3)": {1: 1, 2: 1, 3: 8, 4: 6, 6: 8},
}


def _aut_type(char: int, j: str) -> str:
    if j not in ("0", "1728", "generic"):
        raise ValueError(f"j tag must be '0', '1728' or 'generic', got {j!r}")
    if j == "generic":
        return "C2"
    if char == 2:
        return "SL(2,3)"
    if char == 3:
        return "Dic12"
    return "C6" if j == "0" else "C4"


@lru_cache(maxsize=None)
def image_subgroups_for_special_j(char: int, j: str, p: int) -> list[Subgroup]:
    """Image of ``Aut(E)`` in SL2(F_p) up to conjugacy, for ``j`` in
    ``{"0", "1728", "generic"}``. Found by search over subgroups of SL2(F_p)
    generated by at most two elements, in row-major order."""
    if char == p:
        raise ValueError("characteristic must differ from the level")
    if not is_prime(p) or p < 5:
        raise ValueError("need a prime level p >= 5")
    label = _aut_type(char, j)
    target = _PROFILES[label]
    size = sum(target.values())
    minus = Mat2.scalar(-1, p)
    if label == "C2":
        return [Subgroup(label, (Mat2.identity(p), minus))]
    if label in ("C4", "C6"):
        # order 4 in SL2 means trace 0, order 6 means trace 1
        for g in iter_sl2_with_trace(p, 0 if label == "C4" else 1):
            elems = _closure([g], size)
            if elems is not None and minus in elems:
                return [Subgroup(label, tuple(elems))]
    else:
        for a in iter_sl2_with_trace(p, 0):
            seconds = heapq.merge(iter_sl2_with_trace(p, 1), iter_sl2_with_trace(p, -1),
                                  key=lambda m: m.entries())
            for b in seconds:
                elems = _closure([a, b], size)
                if elems is None or len(elems) != size or minus not in elems:
                    continue
                sub = Subgroup(label, tuple(elems))
                if sub.order_profile() == target:
                    return [sub]
    raise LookupError(f"no subgroup of type {label} in SL2(F_{p})")
