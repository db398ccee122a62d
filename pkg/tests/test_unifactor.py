"""Univariate factorization: squarefree decomposition, Berlekamp splitting,
and irreducibility, with brute-force cross-checks."""

import itertools
import random

import pytest

from sparsefact.field import make_field
from sparsefact.unifactor import (UniPoly, UniFactorization, factor_univariate,
                                  squarefree_decompose, is_irreducible)

F7 = make_field(7)
F5 = make_field(5)


def U(coeffs, ctx=F7):
    return UniPoly(ctx, [ctx.elem(c) for c in coeffs])


def rand_uni(ctx, deg, rng):
    coeffs = [ctx.from_index(rng.randrange(ctx.q)) for _ in range(deg)]
    coeffs.append(ctx.from_index(rng.randrange(1, ctx.q)))
    return UniPoly(ctx, coeffs)


def all_monic(ctx, deg):
    for tail in itertools.product(range(ctx.q), repeat=deg):
        yield UniPoly(ctx, [ctx.from_index(i) for i in tail] + [ctx.one()])


# -- squarefree decomposition -------------------------------------------------

def test_squarefree_decompose_example():
    # (y-1)^2 (y+1) = y^3 - y^2 - y + 1
    f = U([6, 1]) * U([6, 1]) * U([1, 1])
    parts = squarefree_decompose(f)
    assert sorted((p.coeffs[0].serialize(), m) for p, m in parts) == \
        [(1, 1), (6, 2)]


def test_squarefree_pure_pth_power():
    f = U([0, 0, 0, 0, 0, 1], F5)   # y^5 over F_5
    parts = squarefree_decompose(f)
    assert len(parts) == 1
    p, m = parts[0]
    assert m == 5 and p.degree() == 1 and p.coeffs[0].is_zero()


def test_squarefree_identity_case():
    f = U([3, 0, 1])   # squarefree
    parts = squarefree_decompose(f)
    assert len(parts) == 1 and parts[0][1] == 1
    assert parts[0][0] == f


def test_squarefree_reconstruction_random():
    rng = random.Random(0)
    for _ in range(40):
        f = rand_uni(F7, rng.randint(1, 5), rng)
        parts = squarefree_decompose(f)
        prod = UniPoly(F7, [f.lc()])
        for p, m in parts:
            for _ in range(m):
                prod = prod * p
            # parts squarefree and pairwise coprime
            assert p.gcd(p.derivative()).degree() == 0
        for (a, _), (b, _) in itertools.combinations(parts, 2):
            assert a.gcd(b).degree() == 0
        assert prod == f


# -- complete factorization ---------------------------------------------------

def test_factor_roots_of_unity():
    # y^2 + 6 = y^2 - 1 = (y+1)(y+6)
    fac = factor_univariate(U([6, 0, 1]))
    assert fac.unit.is_one()
    got = sorted((p.coeffs[0].serialize(), m) for p, m in fac.parts)
    assert got == [(1, 1), (6, 1)]


def test_factor_irreducible_quadratic():
    # -1 is not a square mod 7
    fac = factor_univariate(U([1, 0, 1]))
    assert len(fac.parts) == 1 and fac.parts[0][1] == 1
    assert fac.parts[0][0] == U([1, 0, 1])
    assert is_irreducible(U([1, 0, 1]))


def test_factor_cube_minus_self():
    fac = factor_univariate(U([0, 6, 0, 1]))   # y^3 - y
    roots = sorted(p.coeffs[0].serialize() for p, _ in fac.parts)
    assert roots == [0, 1, 6] and all(m == 1 for _, m in fac.parts)


def test_unit_is_leading_coefficient():
    fac = factor_univariate(U([3, 5]))
    assert fac.unit.serialize() == 5
    assert all(p.lc().is_one() for p, _ in fac.parts)


def test_remultiplication_random():
    rng = random.Random(1)
    for ctx in (F7, F5, make_field(2, 2), make_field(3, 1)):
        for _ in range(25):
            f = rand_uni(ctx, rng.randint(1, 5), rng)
            assert factor_univariate(f).expand() == f


def test_determinism():
    f = U([2, 3, 0, 1, 1])
    a = factor_univariate(f)
    b = factor_univariate(f)
    assert a.unit == b.unit and a.parts == b.parts


def test_distinct_factor_count_bound():
    rng = random.Random(2)
    for _ in range(30):
        f = rand_uni(F7, rng.randint(1, 5), rng)
        assert len(factor_univariate(f).parts) <= f.degree()


@pytest.mark.parametrize("p,ell", [(2, 1), (3, 1), (5, 1), (7, 1),
                                   (2, 2), (2, 3), (3, 2)])
def test_irreducibility_brute_force(p, ell):
    # factor every monic polynomial of degree <= 3 (4 over tiny fields) and
    # check each part has no monic divisor of smaller positive degree
    ctx = make_field(p, ell)
    maxdeg = 4 if ctx.q <= 3 else 3
    seen_parts = set()
    for deg in range(1, maxdeg + 1):
        for f in all_monic(ctx, deg):
            fac = factor_univariate(f)
            assert fac.expand() == f
            for part, _ in fac.parts:
                key = tuple(c.index() for c in part.coeffs)
                if key in seen_parts:
                    continue
                seen_parts.add(key)
                for dd in range(1, part.degree()):
                    for g in all_monic(ctx, dd):
                        assert not (part % g).is_zero()


def test_is_irreducible_constants_and_linears():
    assert not is_irreducible(U([3]))
    assert is_irreducible(U([2, 1]))
    assert not is_irreducible(U([6, 0, 1]))
