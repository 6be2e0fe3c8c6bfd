from fractions import Fraction

import pytest

from nscartan import kernels
from nscartan.finite_algebra import legendre, primes_in
from nscartan.gl2 import build_cartan
from nscartan.invariants import (
    class_number,
    class_number_forms,
    cm_estimate_holds,
    cm_split,
    curve_invariants,
    fixed_w,
    genus_X0,
    genus_gap_holds,
    genus_ns,
    genus_ns_closed_form,
    genus_ns_plus,
    newpart_dim_check,
    nu_closed_form,
    ramification_data,
    reduced_forms,
)

PRIMES = primes_in(5, 98)


def test_genus_values():
    assert [genus_ns(p) for p in (5, 7, 11, 13)] == [0, 1, 4, 8]
    assert [genus_ns_plus(p) for p in (7, 11, 13)] == [0, 1, 3]


@pytest.mark.parametrize("p", PRIMES)
def test_routes_agree(p):
    ram = ramification_data(p)
    assert (ram.nu2, ram.nu3) == nu_closed_form(p)
    assert ram.cusps == p - 1
    assert ram.genus == genus_ns_closed_form(p) == genus_ns(p)
    plus = ramification_data(p, plus=True)
    assert plus.cusps == (p - 1) // 2
    assert plus.genus == genus_ns_plus(p)
    assert 2 * genus_ns(p) - 2 == 2 * (2 * genus_ns_plus(p) - 2) + fixed_w(p)


@pytest.mark.parametrize("p", [11, 13, 17])
def test_alpha_and_ordering_do_not_matter(p):
    base = (ramification_data(p), ramification_data(p, True))
    alphas = [a for a in range(2, p) if legendre(a, p) == -1][:3]
    for a in alphas:
        for scan in (kernels.SCAN_ROW, kernels.SCAN_COL):
            ctx = build_cartan(p, a, scan)
            assert (ramification_data(p, ctx=ctx), ramification_data(p, True, ctx)) == base


def test_rejects_small_or_composite_levels():
    for bad in (2, 3, 9, 15):
        with pytest.raises(ValueError):
            genus_ns(bad)


def _genus_X0_oracle(N):
    """Riemann-Hurwitz for Gamma_0(N) acting on P^1(Z/N)."""
    from math import gcd

    pts = set()
    for c in range(N):
        for d in range(N):
            if gcd(gcd(c, d), N) == 1:
                # normalise up to units
                pts.add(min(((u * c) % N, (u * d) % N) for u in range(1, N) if gcd(u, N) == 1) if N > 1 else (0, 0))
    pts = sorted(pts)

    def norm(c, d):
        return min(((u * c) % N, (u * d) % N) for u in range(1, N + 1) if gcd(u, N) == 1)

    def act(pt, m):
        c, d = pt
        a, b, cc, dd = m
        return norm(c * a + d * cc, c * b + d * dd)

    S, R, T = (0, -1, 1, 0), (0, -1, 1, 1), (1, 1, 0, 1)
    n = len(pts)
    nu2 = sum(act(x, S) == x for x in pts)
    nu3 = sum(act(x, R) == x for x in pts)
    seen, cusps = set(), 0
    for x in pts:
        if x in seen:
            continue
        cusps += 1
        y = x
        while y not in seen:
            seen.add(y)
            y = act(y, T)
    g = 1 + Fraction(n, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2)
    assert g.denominator == 1
    return int(g)


@pytest.mark.parametrize("N", list(range(2, 61)) + [121, 169])
def test_genus_X0_against_coset_action(N):
    assert genus_X0(N) == _genus_X0_oracle(N)


def test_genus_X0_known_values():
    assert [genus_X0(N) for N in (1, 11, 23, 37, 25, 49, 121, 169)] == [0, 1, 2, 2, 0, 1, 6, 8]


@pytest.mark.parametrize("p", PRIMES)
def test_newpart_dimension(p):
    ok, msg = newpart_dim_check(p)
    assert ok, msg


@pytest.mark.parametrize("p", [p for p in primes_in(7, 200) if p % 4 == 3])
def test_class_number_two_ways(p):
    h = class_number(p)
    assert h == class_number_forms(p)
    assert 0 < h <= (p - 1) // 2


def test_class_number_values():
    assert [class_number(p) for p in (7, 11, 19, 23, 31, 47, 71)] == [1, 1, 1, 3, 3, 5, 7]
    assert reduced_forms(-23) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    with pytest.raises(ValueError):
        class_number(13)


def test_cm_split():
    assert cm_split(13) == (0, 8)
    assert cm_split(11) == (1, 3)
    assert cm_split(23)[0] == 3
    for p in PRIMES:
        gc, gh = cm_split(p)
        assert gc + gh == genus_ns(p) and gh >= 0


def test_genus_gap_and_estimate():
    # g_ns(17) = 15, g_ns(19) = 20
    assert not genus_gap_holds(17) and genus_gap_holds(19)
    for p in primes_in(19, 98):
        assert genus_gap_holds(p)
    for p in primes_in(19, 98):
        if p % 4 == 3:
            assert not cm_estimate_holds(p)


def test_curve_invariants_record():
    inv = curve_invariants(11)
    d = inv.to_dict()
    assert list(d)[:3] == ["p", "genus_ns", "genus_ns_plus"]
    assert (inv.genus_ns, inv.genus_ns_plus, inv.nu2, inv.nu3, inv.g_C, inv.g_H) == (4, 1, 2, 2, 1, 3)
    assert inv.fixed_w_source == "external"
    assert inv.to_text() == curve_invariants(11).to_text()
    assert curve_invariants(13).quadratic_subfield == "real"
