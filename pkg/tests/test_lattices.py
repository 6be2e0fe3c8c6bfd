import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nscartan.finite_algebra import legendre, primes_in
from nscartan.lattices import (
    STANDARD,
    HomothetyLattice,
    cartan_fixed_sublist,
    fixes,
    fixes_by_congruence,
    gamma_p_fixed_bruteforce,
    gamma_p_fixed_lattices,
    gamma_p_generators,
    lift_to_sl2z,
    norm_one_pairs,
    normalizer_verdict,
)
from nscartan.gl2 import build_cartan


def test_canonical_form():
    L = HomothetyLattice.from_basis([(2, 1), (0, 4)])
    assert (L.M, L.g, L.h) == (Fraction(1, 2), 1, 4)
    assert HomothetyLattice.from_basis([(3, 0), (0, 3)]) == STANDARD
    assert HomothetyLattice.from_basis([(1, 5), (0, 5)]) == HomothetyLattice.from_basis([(1, 0), (0, 5)])
    assert str(STANDARD) == "ZxZ"
    with pytest.raises(ValueError):
        HomothetyLattice(Fraction(1), 2, 4)
    with pytest.raises(ValueError):
        HomothetyLattice.from_basis([(1, 2), (2, 4)])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4), st.integers(1, 6))
def test_homothety_invariance(entries, k):
    a, b, c, d = entries
    if a * d - b * c == 0:
        return
    L = HomothetyLattice.from_basis([(a, b), (c, d)])
    assert HomothetyLattice.from_basis([(k * a, k * b), (k * c, k * d)]) == L
    assert HomothetyLattice.from_basis([(c, d), (a + c, b + d)]) == L


@settings(max_examples=200, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-5, 5))
def test_standard_fixed_by_sl2z(a, b, t):
    from math import gcd

    if gcd(a, b) != 1:
        return
    m = lift_to_sl2z((a % 97, b % 97, 0, pow(a, -1, 97) if a % 97 else 0), 97) if a % 97 else (0, -1, 1, t)
    assert fixes(m, STANDARD)


def test_lift():
    rng = random.Random(1)
    for N in (25, 49, 121):
        for _ in range(50):
            while True:
                a, b, c = (rng.randrange(N) for _ in range(3))
                if a % N and __import__("math").gcd(a, N) == 1:
                    d = (1 + b * c) * pow(a, -1, N) % N
                    break
            m = lift_to_sl2z((a, b, c, d), N)
            assert m[0] * m[3] - m[1] * m[2] == 1
            assert tuple(x % N for x in m) == (a, b, c, d)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_congruence_criterion_matches_membership(p):
    rng = random.Random(p)
    N = p * p
    fixed = gamma_p_fixed_lattices(p)
    for _ in range(100):
        while True:
            a, b, c = (rng.randrange(N) for _ in range(3))
            if a % p:
                d = (1 + b * c) * pow(a, -1, N) % N
                break
        m = lift_to_sl2z((a, b, c, d), N)
        for L in fixed:
            assert fixes(m, L) == fixes_by_congruence(m, L, p)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_gamma_p_fixed_list(p):
    fixed = gamma_p_fixed_lattices(p)
    assert len(fixed) == p + 2
    assert STANDARD in fixed
    for L in fixed:
        assert all(fixes(m, L) for m in gamma_p_generators(p))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_fixed_list_is_complete(p):
    assert set(gamma_p_fixed_bruteforce(p)) == set(gamma_p_fixed_lattices(p))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_norm_one_pairs(p):
    pairs = norm_one_pairs(p)
    assert len(pairs) == p + 1
    assert any(y for _, y in pairs)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_cartan_obstruction_is_alpha_minus_square(p):
    # the congruence for <(1, g), (0, p)> under [[x, a y], [y, x]] is y (a - g^2)
    ctx = build_cartan(p)
    alpha = ctx.alpha
    for x, y in norm_one_pairs(p):
        m = lift_to_sl2z(ctx.element(x, y).entries(), p)
        for g in range(p):
            L = HomothetyLattice.from_basis([(1, g), (0, p)])
            assert fixes(m, L) == (y * (alpha - g * g) % p == 0)
    assert all(legendre(alpha - g * g, p) != 0 for g in range(p))


@pytest.mark.parametrize("p", primes_in(5, 48))
def test_cartan_fixes_only_standard(p):
    assert cartan_fixed_sublist(p) == [STANDARD]


@pytest.mark.parametrize("p", [11, 13])
def test_cartan_sublist_alpha_independent(p):
    for a in (x for x in range(2, p) if legendre(x, p) == -1):
        assert cartan_fixed_sublist(p, a) == [STANDARD]


def test_normalizer_verdict():
    v = normalizer_verdict(13)
    assert v.verdict and v.ok
    assert v.inputs["normalizer_index"][0] == 2
    assert v.inputs["fixed_lattices"][0] == ["ZxZ"]
    with pytest.raises(ValueError):
        normalizer_verdict(7)


def _matmul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_congruence_criterion_on_cartan_lifts(p):
    # random integer lifts of norm-one Cartan elements, varied by Gamma(p) words
    rng = random.Random(10 * p)
    ctx = build_cartan(p)
    pairs = norm_one_pairs(p)
    gens = gamma_p_generators(p)
    fixed = gamma_p_fixed_lattices(p)
    for _ in range(500):
        x, y = rng.choice(pairs)
        m = lift_to_sl2z(ctx.element(x, y).entries(), p)
        for _ in range(rng.randrange(4)):
            m = _matmul(m, rng.choice(gens))
        for L in fixed:
            assert fixes(m, L) == fixes_by_congruence(m, L, p)
