import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from superjac.groupring import (GroupRingElem, check_torsion_identities, expected_torsion,
                                group_pairing, group_pairing_table, ideal_basis, ideal_generators,
                                quotient_structure, smith_normal_form, splitting_rho, torsion_structure)

GRID = [(d, r) for d in range(3, 13) for r in range(2, d + 1) if d % r == 0]


def _mm(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@pytest.mark.parametrize("seed", range(6))
def test_snf_transforms(seed):
    rng = random.Random(seed)
    n, m = rng.randint(2, 6), rng.randint(2, 6)
    M = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)]
    factors, U, V, Uinv, Vinv = smith_normal_form(M)
    D = _mm(_mm(U, M), V)
    for i in range(n):
        for j in range(m):
            assert D[i][j] == (factors[i] if i == j and i < len(factors) else 0)
    nz = [f for f in factors if f]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    ident = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]
    assert _mm(U, Uinv) == ident(n) and _mm(V, Vinv) == ident(m)
    S = sympy_snf(Matrix(M), domain=ZZ)
    assert sorted(abs(S[i, i]) for i in range(min(n, m))) == sorted(abs(f) for f in factors[:min(n, m)])


def test_small_structure():
    assert torsion_structure(3, 3) == (3, 3, 3)
    assert torsion_structure(4, 2) == (1, 2, 4)
    assert torsion_structure(4, 4) == (2, 4, 8)
    nonzero, free = quotient_structure(3, 3)
    assert free == 2


@pytest.mark.parametrize("d,r", GRID)
def test_structure_grid(d, r):
    ts = torsion_structure(d, r)
    assert ts == expected_torsion(r)
    assert ts[0] * ts[1] * ts[2] == r ** 3
    assert quotient_structure(d, r)[1] == (r - 1) * (d - 2)
    assert check_torsion_identities(d, r)


@pytest.mark.parametrize("d,r", [(3, 3), (4, 2), (6, 3), (8, 4), (9, 3)])
def test_rho_kills_ideal_and_is_equivariant(d, r):
    for g in ideal_generators(d, r):
        assert splitting_rho(d, r, g).is_zero()
    rng = random.Random(d * r)
    x = GroupRingElem(d, r, [Fraction(rng.randint(-5, 5)) for _ in range(d * r)])
    for i, j in [(1, 0), (0, 1), (2, 1)]:
        g = GroupRingElem.monomial(d, r, i, j)
        assert splitting_rho(d, r, g * x) == g * splitting_rho(d, r, x)


@pytest.mark.parametrize("d,r", [(3, 3), (4, 2), (6, 2), (6, 3), (8, 4), (10, 5)])
def test_pairing_symmetry(d, r):
    for i in range(d):
        for j in range(r):
            v = group_pairing(d, r, (i, j))
            assert v == group_pairing(d, r, (-i, -j))
            assert v == group_pairing_table(d, r, i, j)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 3), (4, 2), (6, 3)]), st.lists(st.integers(-4, 4), min_size=36, max_size=36),
       st.lists(st.integers(-4, 4), min_size=36, max_size=36))
def test_ring_axioms(dr, a, b):
    d, r = dr
    n = d * r
    x, y = GroupRingElem(d, r, a[:n]), GroupRingElem(d, r, b[:n])
    assert x * y == y * x
    assert x * (x + y) == x * x + x * y


def test_ideal_basis_shape():
    labels, elems, M = ideal_basis(6, 3)
    assert len(M) == len(labels) == len(elems)
    assert all(len(row) == 18 for row in M)
