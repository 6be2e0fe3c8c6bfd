import random

import pytest
from hypothesis import given, settings, strategies as st

from nscartan import kernels
from nscartan.finite_algebra import primes_in
from nscartan.gl2 import (
    Mat2,
    build_cartan,
    class_from_charpoly,
    classify,
    count_fixed_cosets,
    count_fixed_cosets_closed_form,
    elliptic_element_existence,
    image_subgroups_for_special_j,
    iter_gl2,
)

SMALL = primes_in(5, 32)


def all_classes(p):
    """One representative per conjugacy class of GL2(F_p)."""
    out = []
    for t in range(p):
        for d in range(1, p):
            disc = (t * t - 4 * d) % p
            if disc == 0:
                out.append(class_from_charpoly(t, d, p, scalar=True))
                out.append(class_from_charpoly(t, d, p, scalar=False))
            else:
                out.append(class_from_charpoly(t, d, p))
    return out


@pytest.mark.parametrize("p, group_order", [(5, 480), (7, 2016)])
def test_group_orders(p, group_order):
    assert sum(1 for _ in iter_gl2(p)) == group_order
    ctx = build_cartan(p)
    assert len(ctx.cartan_elements()) == p * p - 1
    assert group_order // len(ctx.cartan_elements()) == ctx.index()
    assert group_order // len(ctx.normalizer_elements()) == ctx.index(plus=True)


def test_index_examples():
    assert build_cartan(5).index() == 20
    assert build_cartan(7).index(plus=True) == 21


def test_classify_examples():
    assert classify(Mat2.identity(7)).kind == "scalar"
    m = classify(Mat2(0, -1, 1, 0, 7))
    assert m.kind == "nonsplit" and m.charpoly_coeffs == (1, 0, 1)
    j = classify(Mat2(1, 1, 0, 1, 7))
    assert j.kind == "jordan" and j.eigenvalues == (1,)


@pytest.mark.parametrize("p", SMALL)
def test_cartan_structure(p):
    ctx = build_cartan(p)
    C = ctx.cartan_elements()
    s = ctx.reflection
    codes = {m.encode() for m in C}
    for lam in range(1, p):
        assert Mat2.scalar(lam, p).encode() in codes
    rng = random.Random(p)
    for _ in range(50):
        a, b = rng.choice(C), rng.choice(C)
        assert a @ b == b @ a
    for x in range(p):
        for y in range(p):
            if x or y:
                m = ctx.element(x, y)
                assert m.conj(s) == ctx.element(x, -y)
                if y:
                    assert classify(m).kind == "nonsplit"
    assert len(ctx.normalizer_elements()) == 2 * len(C)


@pytest.mark.parametrize("p", SMALL)
def test_fixed_coset_counts_match_closed_form(p):
    ctx = build_cartan(p)
    for cls in all_classes(p):
        rep = cls.representative()
        assert classify(rep) == cls
        for H in ("C", "C+"):
            assert count_fixed_cosets(rep, H, ctx) == count_fixed_cosets_closed_form(cls, H), (cls, H)


def test_fixed_coset_examples():
    assert count_fixed_cosets(Mat2(0, -1, 1, 0, 7), "C", build_cartan(7)) == 2
    assert count_fixed_cosets(Mat2(1, 1, 0, 1, 5), "C", build_cartan(5)) == 0
    assert count_fixed_cosets(Mat2.scalar(3, 11), "C", build_cartan(11)) == 110


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_count_is_class_function(p, seed_x, seed_g):
    ctx = build_cartan(p)
    rx, rg = random.Random(seed_x), random.Random(seed_g)
    x = g = None
    while x is None or not x.is_invertible():
        x = Mat2(*(rx.randrange(p) for _ in range(4)), p)
    while g is None or not g.is_invertible():
        g = Mat2(*(rg.randrange(p) for _ in range(4)), p)
    for H in ("C", "C+"):
        assert count_fixed_cosets(x, H, ctx) == count_fixed_cosets(x.conj(g), H, ctx)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_coset_reps_cover_group(p):
    for scan in (kernels.SCAN_ROW, kernels.SCAN_COL):
        ctx = build_cartan(p, scan=scan)
        for plus in (False, True):
            reps = [Mat2(*map(int, r), p) for r in ctx.coset_reps(plus)]
            assert len(reps) == ctx.index(plus)
            H = ctx.normalizer_elements() if plus else ctx.cartan_elements()
            covered = {(h @ g).encode() for g in reps for h in H}
            assert len(covered) == len(H) * len(reps)


def test_row_scan_reps_have_first_row_zero_one():
    for r in build_cartan(11).coset_reps():
        assert tuple(r[:2]) == (0, 1)


def test_alternative_nonsquare():
    p = 13
    ctx2 = build_cartan(p, alpha=5)
    assert ctx2.alpha == 5
    for cls in all_classes(p):
        assert count_fixed_cosets(cls.representative(), "C", ctx2) == count_fixed_cosets_closed_form(cls, "C")
    with pytest.raises(ValueError):
        build_cartan(p, alpha=4)


@pytest.mark.parametrize("p, expected", [(13, (False, False)), (11, (True, True)), (7, (True, False))])
def test_elliptic_elements(p, expected):
    assert elliptic_element_existence(p) == expected


@pytest.mark.parametrize(
    "char, j, p, order, cyclic",
    [(5, "0", 11, 6, True), (7, "1728", 13, 4, True), (2, "0", 11, 24, False), (3, "0", 13, 12, False),
     (5, "generic", 11, 2, True), (2, "0", 97, 24, False)],
)
def test_automorphism_images(char, j, p, order, cyclic):
    A = image_subgroups_for_special_j(char, j, p)[0]
    assert A.order == order
    assert A.is_cyclic() == cyclic
    assert all(m.det == 1 for m in A.elements)
    assert Mat2.scalar(-1, p) in A.elements


def test_sl23_profile():
    A = image_subgroups_for_special_j(2, "0", 11)[0]
    assert A.order_profile() == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}


def test_bounds():
    with pytest.raises(ValueError):
        build_cartan(101)
    with pytest.raises(ValueError):
        build_cartan(9)
