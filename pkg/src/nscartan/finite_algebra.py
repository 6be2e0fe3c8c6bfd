"""Exact arithmetic in prime fields, small extension fields and polynomial rings.

Field elements are encoded as integers: the element ``sum c_i * beta**i`` of
``F_{char^r} = F_char[beta]/(f)`` is stored as ``sum c_i * char**i``. Integer
constants therefore encode as themselves reduced mod ``char``. Multiplication
goes through exp/log tables built once per field.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

#: Largest field size :func:`build_ext_field` accepts by default.
DEFAULT_FIELD_BOUND = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes ``lo <= p <= hi``."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def legendre(m: int, p: int) -> int:
    """Legendre symbol ``(m/p)`` for an odd prime ``p``, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre symbol needs an odd prime modulus, got {p}")
    m %= p
    if m == 0:
        return 0
    return 1 if pow(m, (p - 1) // 2, p) == 1 else -1


def nonsquares(p: int):
    """Positive non-residues mod ``p`` in increasing order."""
    for a in range(2, p):
        if legendre(a, p) == -1:
            yield a


def find_nonsquare(p: int) -> "FieldElement":
    """Smallest positive quadratic non-residue mod ``p``, as an element of ``F_p``."""
    return GF(p)(next(nonsquares(p)))


# ---------------------------------------------------------------------------
# raw (table-free) arithmetic on encodings, used only while building tables


def _digits(a: int, char: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        a, c = divmod(a, char)
        out.append(c)
    return out


def _encode(digits: Sequence[int], char: int) -> int:
    v = 0
    for c in reversed(digits):
        v = v * char + c
    return v


def _mul_raw(a: int, b: int, char: int, modulus: Sequence[int]) -> int:
    r = len(modulus) - 1
    da, db = _digits(a, char, r), _digits(b, char, r)
    conv = [0] * (2 * r - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                conv[i + j] += x * y
    for k in range(2 * r - 2, r - 1, -1):
        c = conv[k] % char
        if c:
            for i in range(r):
                conv[k - r + i] -= c * modulus[i]
        conv[k] = 0
    return _encode([c % char for c in conv[:r]], char)


def _pow_raw(a: int, e: int, char: int, modulus: Sequence[int]) -> int:
    result = 1
    while e:
        if e & 1:
            result = _mul_raw(result, a, char, modulus)
        a = _mul_raw(a, a, char, modulus)
        e >>= 1
    return result


def _vmul_scalar_raw(A: np.ndarray, b: int, char: int, modulus: Sequence[int]) -> np.ndarray:
    """Multiply every encoding in ``A`` by the single encoding ``b``."""
    r = len(modulus) - 1
    da = np.empty((r, A.size), dtype=np.int64)
    rest = A.astype(np.int64).copy()
    for i in range(r):
        da[i] = rest % char
        rest //= char
    db = _digits(b, char, r)
    conv = np.zeros((2 * r - 1, A.size), dtype=np.int64)
    for j, y in enumerate(db):
        if y:
            conv[j:j + r] += y * da
    conv %= char
    for k in range(2 * r - 2, r - 1, -1):
        c = conv[k]
        for i in range(r):
            if modulus[i]:
                conv[k - r + i] = (conv[k - r + i] - c * modulus[i]) % char
    out = np.zeros(A.size, dtype=np.int64)
    for i in range(r - 1, -1, -1):
        out = out * char + conv[i]
    return out


# ---------------------------------------------------------------------------


class FiniteField:
    """The field with ``char**degree`` elements.

    Operations act on integer encodings; wrap with ``F(value)`` for operator
    syntax. Build through :func:`build_ext_field` (or :func:`GF`), which caches
    one handle per ``(char, degree)``.
    """

    def __init__(self, char: int, degree: int, modulus: Sequence[int], bound: int = DEFAULT_FIELD_BOUND):
        if not is_prime(char):
            raise ValueError(f"characteristic must be prime, got {char}")
        if degree < 1:
            raise ValueError("degree must be positive")
        q = char**degree
        if q > bound:
            raise ValueError(f"field size {char}^{degree} = {q} exceeds the enumeration bound {bound}")
        modulus = tuple(int(c) % char for c in modulus)
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise ValueError("defining polynomial must be monic of the field degree")
        if not _is_irreducible(modulus, char):
            raise ValueError(f"defining polynomial {modulus} is reducible over F_{char}")
        self.char = char
        self.degree = degree
        self.order = q
        self.modulus = modulus
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _build_tables(self):
        q, char = self.order, self.char
        if q == 2:
            gen = 1
        else:
            factors = prime_factors(q - 1)
            gen = next(
                g for g in range(2, q) if all(_pow_raw(g, (q - 1) // f, char, self.modulus) != 1 for f in factors)
            ) if self.degree > 1 else next(
                g for g in range(2, q) if all(pow(g, (q - 1) // f, q) != 1 for f in factors)
            )
        self.generator = gen
        n = q - 1
        exp = np.empty(n, dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < n:
            step = min(filled, n - filled)
            g_pow = int(exp[filled - 1])
            g_pow = _mul_raw(g_pow, gen, char, self.modulus) if self.degree > 1 else g_pow * gen % q
            if self.degree > 1:
                exp[filled:filled + step] = _vmul_scalar_raw(exp[:step], g_pow, char, self.modulus)
            else:
                exp[filled:filled + step] = exp[:step] * g_pow % q
            filled += step
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("generator is not primitive")
        self.exp = np.concatenate([exp, exp])
        self.log = log
        self._exp_list = self.exp.tolist()
        self._log_list = log.tolist()
        elems = np.arange(q, dtype=np.int64)
        self.neg_table = self._vneg_digits(elems)
        tr = elems.copy()
        cur = elems.copy()
        for _ in range(self.degree - 1):
            cur = self.vpow(cur, char)
            tr = self.vadd(tr, cur)
        self.trace_table = tr
        self._neg_list = self.neg_table.tolist()

    def _vneg_digits(self, A):
        if self.char == 2:
            return A.copy()
        out = np.zeros_like(A)
        rest = A.copy()
        place = 1
        for _ in range(self.degree):
            d = rest % self.char
            out += ((self.char - d) % self.char) * place
            rest //= self.char
            place *= self.char
        return out

    # -- scalar ops on encodings -------------------------------------------

    def __repr__(self):
        return f"FiniteField({self.char}^{self.degree})"

    def __len__(self):
        return self.order

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value.value
        value = int(value)
        if self.degree == 1:
            return value % self.char
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an encoding in {self}")
        return value

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under ``Z -> F``."""
        return n % self.char

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.char
        if self.char == 2:
            return a ^ b
        c, out, place = self.char, 0, 1
        while a or b:
            out += ((a % c + b % c) % c) * place
            a //= c
            b //= c
            place *= c
        return out

    def neg(self, a: int) -> int:
        return self._neg_list[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_list[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.degree == 1:
            return a * b % self.char
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp_list[(-self._log_list[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """``a ** (char ** k)``."""
        return self.pow(a, self.char**k)

    def norm(self, a: int) -> int:
        """Norm to the prime subfield."""
        return self.pow(a, (self.order - 1) // (self.char - 1))

    def trace(self, a: int) -> int:
        """Trace to the prime subfield."""
        return int(self.trace_table[a])

    def is_square(self, a: int) -> bool:
        if a == 0 or self.char == 2:
            return True
        return self._log_list[a] % 2 == 0

    def in_prime_subfield(self, a: int) -> bool:
        return a < self.char

    def sum(self, items: Iterable[int]) -> int:
        acc = 0
        for x in items:
            acc = self.add(acc, x)
        return acc

    # -- vectorised ops on encoding arrays ---------------------------------

    def vadd(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.degree == 1:
            return (A + B) % self.char
        if self.char == 2:
            return A ^ B
        c = self.char
        out = np.zeros(np.broadcast(A, B).shape, dtype=np.int64)
        place = 1
        for _ in range(self.degree):
            out += ((A % c + B % c) % c) * place
            A = A // c
            B = B // c
            place *= c
        return out

    def vneg(self, A):
        return self.neg_table[np.asarray(A, dtype=np.int64)]

    def vmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        la, lb = self.log[A], self.log[B]
        out = self.exp[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def vpow(self, A, e: int):
        A = np.asarray(A, dtype=np.int64)
        la = self.log[A]
        out = self.exp[(np.maximum(la, 0) * e) % (self.order - 1)]
        if e == 0:
            return np.ones_like(A)
        return np.where(la < 0, 0, out)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    def _other(self, other) -> int:
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@F{self.field.order}"


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with coefficient encodings listed from degree 0 up."""

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_ints(cls, field: FiniteField, coeffs: Iterable[int]) -> "Polynomial":
        return cls(field, tuple(field.from_int(c) for c in coeffs))

    @classmethod
    def x(cls, field: FiniteField) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, c: int) -> "Polynomial":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(F, tuple(F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)))

    def __neg__(self):
        return Polynomial(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, tuple(self.field.mul(c, x) for x in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.field.coerce(other))
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial(F, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = other.degree
        inv_lc = F.inv(other.lc)
        quot = [0] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = F.mul(c, inv_lc)
            quot[k - dg] = f
            for i, y in enumerate(other.coeffs):
                if y:
                    rem[k - dg + i] = F.sub(rem[k - dg + i], F.mul(f, y))
        return Polynomial(F, tuple(quot)), Polynomial(F, tuple(rem[:dg]))

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial.const(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def roots(self) -> list[int]:
        """Roots in the coefficient field, by exhaustive evaluation."""
        return [x for x in self.field.elements() if self(x) == 0]

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)} over F{self.field.order})"


def _is_irreducible(modulus: Sequence[int], char: int) -> bool:
    """Rabin's test for a monic polynomial over the prime field."""
    r = len(modulus) - 1
    if r == 1:
        return True
    F = GF(char)
    f = Polynomial(F, tuple(modulus))
    x = Polynomial.x(F)
    if x.powmod(char**r, f) != x % f:
        return False
    for ell in prime_factors(r):
        h = x.powmod(char ** (r // ell), f) - x
        if f.gcd(h).degree != 0:
            return False
    return True


def smallest_irreducible(char: int, r: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``r`` whose lower coefficients, read as the
    base-``char`` number ``c_0 + c_1 char + ...``, are smallest."""
    if r == 1:
        return (0, 1)
    for n in range(char**r):
        cand = tuple(_digits(n, char, r)) + (1,)
        if cand[0] != 0 and _is_irreducible(cand, char):
            return cand
    raise AssertionError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def _cached_field(char: int, r: int) -> FiniteField:
    return FiniteField(char, r, smallest_irreducible(char, r), bound=char**r)


def build_ext_field(char: int, r: int, bound: int = DEFAULT_FIELD_BOUND) -> FiniteField:
    """The field ``F_{char^r}`` over its canonical defining polynomial."""
    if not is_prime(char):
        raise ValueError(f"characteristic must be prime, got {char}")
    if r < 1:
        raise ValueError("degree must be positive")
    if char**r > bound:
        raise ValueError(f"field size {char}^{r} exceeds the enumeration bound {bound}")
    return _cached_field(char, r)


def GF(q: int) -> FiniteField:
    """Field of prime-power order ``q``."""
    for char in prime_factors(q):
        r, n = 0, q
        while n % char == 0:
            n //= char
            r += 1
        if n == 1:
            return build_ext_field(char, r)
        break
    raise ValueError(f"{q} is not a prime power")
