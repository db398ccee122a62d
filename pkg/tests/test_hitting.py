"""Deterministic hitting sets: grid soundness, boundary sizing, determinism,
and the anchor-point parameter instantiation."""

import itertools

import pytest

from sparsefact.errors import FieldTooSmall
from sparsefact.field import make_field
from sparsefact.sparsepoly import SparsePoly, parse_poly
from sparsefact.hitting import HittingSet, gen_hitting_set, gen_anchor_set
from sparsefact.resultant import resultant_at_point

F7 = make_field(7)
F5 = make_field(5)


def test_grid_univariate_linear():
    hs = gen_hitting_set(F7, 1, 2, 1, 1)
    pts = hs.points()
    assert pts == [(F7.elem(0),), (F7.elem(1),)]
    # every nonzero linear univariate is nonzero at 0 or 1
    for a in range(7):
        for b in range(7):
            if a == 0 and b == 0:
                continue
            f = SparsePoly(F7, 1, {(1,): F7.elem(a), (0,): F7.elem(b)})
            f = SparsePoly(F7, 1, {e: c for e, c in f.terms.items()
                                   if not c.is_zero()})
            assert any(not f.evaluate(list(p)).is_zero() for p in pts)


def test_grid_biquadratic_size_and_soundness():
    hs = gen_hitting_set(F7, 2, 4, 2, 1)
    pts = hs.points()
    assert hs.size == 9 and len(pts) == 9
    vals = sorted({p[0].serialize() for p in pts})
    assert vals == [0, 1, 2]
    # exhaustive check over biquadratics with coefficients in {0,1}
    exps = list(itertools.product(range(3), repeat=2))
    for mask in range(1, 1 << len(exps)):
        terms = {exps[i]: F7.one() for i in range(len(exps))
                 if mask >> i & 1}
        f = SparsePoly(F7, 2, terms)
        assert any(not f.evaluate(list(p)).is_zero() for p in pts)


def test_field_too_small_boundary():
    # F_5 supplies exactly 5 distinct values: D=4 is the boundary, D=5 fails
    hs = gen_hitting_set(F5, 3, 2, 2, 2)        # D = k*d = 4
    assert hs.size == 5 ** 3
    with pytest.raises(FieldTooSmall) as ei:
        gen_hitting_set(F5, 3, 2, 5, 1)          # D = 5 needs 6 values
    assert ei.value.required == 6


def test_determinism():
    a = gen_hitting_set(F7, 2, 3, 2, 2).points()
    b = gen_hitting_set(F7, 2, 3, 2, 2).points()
    assert a == b
    assert gen_hitting_set(F7, 2, 3, 2, 2).params == (2, 3, 2, 2, "grid")


def test_lexicographic_order():
    pts = gen_hitting_set(F7, 2, 2, 1, 1).points()
    ser = [tuple(c.serialize() for c in p) for p in pts]
    assert ser == sorted(ser)


def test_monotonicity():
    base = gen_hitting_set(F7, 2, 2, 1, 1).size
    assert gen_hitting_set(F7, 2, 2, 2, 1).size >= base
    assert gen_hitting_set(F7, 2, 2, 1, 2).size >= base
    assert gen_hitting_set(F7, 2, 9, 1, 1).size >= base


def test_exhaustive_grid_soundness_small_family():
    # all nonzero univariate cubics over F_2 embedded in F_7, k=3 products
    # of linear factors have degree <= 3, grid D = 3 must hit them
    hs = gen_hitting_set(F7, 1, 2, 1, 3)
    pts = hs.points()
    for coeffs in itertools.product(range(2), repeat=4):
        if not any(coeffs):
            continue
        f = SparsePoly(F7, 1, {(i,): F7.elem(c)
                               for i, c in enumerate(coeffs) if c})
        assert any(not f.evaluate(list(p)).is_zero() for p in pts)


def test_ks_strategy_runs():
    hs = gen_hitting_set(F7, 3, 2, 1, 1, strategy="ks")
    pts = hs.points(limit=10)
    assert len(pts) == 10 and all(len(p) == 3 for p in pts)
    assert pts == gen_hitting_set(F7, 3, 2, 1, 1, strategy="ks").points(10)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        gen_hitting_set(F7, 1, 1, 1, 1, strategy="bogus")


def test_anchor_set_separates_square_difference():
    # f = y^2 - x1^2 = (y - x1)(y + x1); Res_y = 2*a at x1 = a, so any
    # anchor point with a != 0 works and the set must contain one
    hs = gen_anchor_set(F7, 1, 2, 1)
    g = parse_poly("y + 6*x1", F7)   # y - x1
    h = parse_poly("y + x1", F7)
    found = False
    for p in hs.points():
        r = resultant_at_point(g, h, list(p))
        if not r.is_zero():
            assert r == F7.elem(2) * p[0]
            found = True
            break
    assert found


def test_anchor_set_single_factor_nonempty():
    hs = gen_anchor_set(F7, 2, 1, 1)
    assert hs.size >= 1 and len(hs.points(limit=1)) == 1
