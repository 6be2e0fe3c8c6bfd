"""Divisors supported on the cusps of X_ns(p).

The cusps form a torsor under (Z/p)^*, numbered by units ``t`` after fixing
a base cusp. The Galois element sigma_l acts as ``t -> l t`` and the
involution w as ``t -> -t``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .finite_algebra import is_prime


@dataclass(frozen=True)
class CuspDivisor:
    p: int
    coeffs: tuple[tuple[int, int], ...]  # sorted (cusp, multiplicity), no zeros

    @classmethod
    def from_map(cls, p: int, mapping) -> "CuspDivisor":
        items = []
        for t, n in dict(mapping).items():
            if t % p == 0:
                raise ValueError(f"{t} is not a unit mod {p}")
            items.append((t % p, n))
        merged = Counter()
        for t, n in items:
            merged[t] += n
        return cls(p, tuple(sorted((t, n) for t, n in merged.items() if n)))

    @classmethod
    def cusp(cls, p: int, t: int, n: int = 1) -> "CuspDivisor":
        return cls.from_map(p, {t: n})

    @classmethod
    def zero(cls, p: int) -> "CuspDivisor":
        return cls(p, ())

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.coeffs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(t for t, _ in self.coeffs)

    def _check(self, other: "CuspDivisor"):
        if other.p != self.p:
            raise ValueError("divisors on different curves")

    def __add__(self, other: "CuspDivisor") -> "CuspDivisor":
        self._check(other)
        m = Counter(self.as_dict())
        m.update(other.as_dict())
        return CuspDivisor.from_map(self.p, m)

    def __neg__(self):
        return CuspDivisor(self.p, tuple((t, -n) for t, n in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int) -> "CuspDivisor":
        return CuspDivisor.from_map(self.p, {t: k * n for t, n in self.coeffs})

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{n}[{t}]" for t, n in self.coeffs)


def cusps(p: int) -> range:
    return range(1, p)


def _unit(l: int, p: int) -> int:
    if l % p == 0:
        raise ValueError(f"{l} is not a unit mod {p}")
    return l % p


def galois_act(l: int, D: CuspDivisor) -> CuspDivisor:
    l = _unit(l, D.p)
    return CuspDivisor.from_map(D.p, {l * t: n for t, n in D.coeffs})


def w_act(D: CuspDivisor) -> CuspDivisor:
    return CuspDivisor.from_map(D.p, {-t: n for t, n in D.coeffs})


def relabel(c: int, D: CuspDivisor) -> CuspDivisor:
    """Move the base cusp: ``t -> c t``. Commutes with every operator here."""
    return galois_act(c, D)


def hecke_Tl(l: int, D: CuspDivisor) -> CuspDivisor:
    """``T_l D = sigma_l D + l sigma_l^-1 D``."""
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    if l == D.p:
        raise ValueError("l must differ from the level")
    inv = pow(l, -1, D.p)
    return galois_act(l, D) + l * galois_act(inv, D)


OPERATORS = {"identity": lambda D: D, "w": w_act}


def D_l(u: str, l: int, C: int, C2: int, p: int) -> CuspDivisor:
    """``u^{sigma_l} T_l (C - C') - T_l u (C - C')``.

    ``u`` is ``"identity"`` or ``"w"``; both are defined over Q, so
    ``u^{sigma_l} = u``.
    """
    if u not in OPERATORS:
        raise ValueError(f"u must be one of {sorted(OPERATORS)}")
    if C % p == C2 % p:
        raise ValueError("cusps must be distinct")
    act = OPERATORS[u]
    diff = CuspDivisor.cusp(p, C) - CuspDivisor.cusp(p, C2)
    return act(hecke_Tl(l, diff)) - hecke_Tl(l, act(diff))


def disjoint_support_choice(l: int, C: int, p: int) -> int:
    """Least cusp C' with ``supp T_l C`` and ``supp T_l C'`` disjoint."""
    base = hecke_Tl(l, CuspDivisor.cusp(p, C)).support
    for C2 in cusps(p):
        if C2 == C % p:
            continue
        if not base & hecke_Tl(l, CuspDivisor.cusp(p, C2)).support:
            return C2
    raise LookupError(f"no cusp with support disjoint from T_{l}({C}) at p={p}")


def _operator_matrix(op, p: int) -> list[list[int]]:
    """Matrix of a linear operator on the basis cusps (columns are images)."""
    basis = list(cusps(p))
    cols = [op(CuspDivisor.cusp(p, t)).as_dict() for t in basis]
    return [[col.get(s, 0) for col in cols] for s in basis]


def _permutation_matrix(k: int, p: int) -> list[list[int]]:
    basis = list(cusps(p))
    return [[1 if s == k * t % p else 0 for t in basis] for s in basis]


def eichler_shimura_shape_check(l: int, p: int) -> bool:
    """Compare ``T_l`` on the basis cusps with ``P_l + l P_{l^-1}`` built
    directly from permutation matrices of the torsor."""
    if not is_prime(l) or l == p:
        raise ValueError("l must be a prime different from p")
    T = _operator_matrix(lambda D: hecke_Tl(l, D), p)
    P = _permutation_matrix(l, p)
    Pinv = _permutation_matrix(pow(l, -1, p), p)
    expected = [[P[i][j] + l * Pinv[i][j] for j in range(p - 1)] for i in range(p - 1)]
    return T == expected
