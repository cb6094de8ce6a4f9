from fractions import Fraction
from math import comb

import pytest

from superjac.charsums import local_trace, naive_point_count
from superjac.ffield import build_field
from superjac.lfunction import (LPoly, analytic_rank, balanced_count, brute_force_L, closed_form_L,
                                degree_bound, index_set, orbit_decomposition, rank_formula, series_exp)
from superjac.lfunction import _weights

# frozen after agreement of the two independent paths
FROZEN = {
    (4, 3, 3): (1, -8, 16),
    (5, 3, 2): (1, 0, -25),
    (5, 4, 2): (1, 6, 25),
    (7, 3, 2): (1, -2, 49),
    (8, 3, 3): (1, 0, -64),
    (16, 3, 3): (1, -32, 256),
}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_closed_forms(key):
    assert closed_form_L(*key).coeffs == FROZEN[key]


@pytest.mark.parametrize("key", [(4, 3, 3), (5, 3, 2), (5, 4, 2), (7, 3, 2), (8, 3, 3), (7, 2, 3), (11, 4, 2)])
def test_two_paths_agree(key):
    assert closed_form_L(*key).coeffs == brute_force_L(*key).coeffs


def _naive_L(q, d, r):
    """L from naive point counts on the smooth fibres; only the bad fibres
    use the character-sum traces."""
    p = {4: 2, 5: 5, 7: 7}[q]
    e = {4: 2, 5: 1, 7: 1}[q]
    N = degree_bound(d, r)
    A = []
    for n in range(1, N + 1):
        F = build_field(p, e * n)
        w = _weights(F, d)
        total = local_trace(F, r, d, None)
        for alpha in range(F.q):
            if w[alpha] == 0:
                continue
            if alpha in (0, 1):
                a = local_trace(F, r, 1, alpha)
            else:
                a = F.q + 1 - naive_point_count(F, r, alpha)
            total += int(w[alpha]) * a
        A.append(total)
    return tuple(int(c) for c in series_exp(A))


@pytest.mark.parametrize("key", [(4, 3, 3), (5, 4, 2), (7, 3, 2)])
def test_naive_count_oracle(key):
    assert _naive_L(*key) == closed_form_L(*key).coeffs


def test_brute_force_degree_stops():
    # past the degree the series has no further terms
    L = brute_force_L(5, 4, 2, N=5)
    assert L.coeffs == (1, 6, 25)


def test_generator_independence():
    base = closed_form_L(9, 4, 4)
    for a in (3, 5, 7):
        assert closed_form_L(9, 4, 4, gen_powers={1: a}).coeffs == base.coeffs
    assert closed_form_L(5, 3, 2, gen_powers={2: 5}).coeffs == FROZEN[(5, 3, 2)]


def test_index_set_and_orbits():
    assert index_set(3, 3) == [(1, 1), (2, 2)]
    o = orbit_decomposition(4, 3, 3)
    assert sorted(len(x) for x in o.orbits) == [1, 1]
    o = orbit_decomposition(5, 3, 2)
    assert [len(x) for x in o.orbits] == [2]
    with pytest.raises(ValueError):
        orbit_decomposition(4, 3, 2)


@pytest.mark.parametrize("p,k", [(2, 2), (5, 1), (3, 2), (7, 1), (2, 3)])
def test_functional_equation_and_weil_bound(p, k):
    q = p ** k
    for d in range(2, 7):
        for r in range(2, 5):
            if (d * r) % p:
                L = closed_form_L(q, d, r)
                n, c = L.degree, L.coeffs
                # inverse roots of absolute value q: c_{n-k} = eps q^(n-2k) c_k
                eps = Fraction(c[n], q ** n)
                assert abs(eps) == 1
                assert all(c[n - k] == eps * Fraction(q) ** (n - 2 * k) * c[k] for k in range(n + 1))
                assert all(abs(c[k]) <= comb(n, k) * q ** k for k in range(n + 1))


def test_analytic_rank():
    rho, M, lead = analytic_rank(LPoly((1, -8, 16), 4))
    assert (rho, M.coeffs, lead) == (2, (1,), 1)
    rho, M, lead = analytic_rank(LPoly((1, 0, -25), 5))
    assert rho == 1 and M.coeffs == (1, 5) and lead == 2
    assert analytic_rank(LPoly((1, 6, 25), 5))[0] == 0


def test_rank_formula_and_balanced():
    assert rank_formula(4, 3, 3) == 2
    assert rank_formula(2, 3, 3) == 1
    assert rank_formula(9, 4, 4) == 6
    for key in [(4, 3, 3), (9, 4, 4), (5, 3, 2), (5, 4, 2), (7, 3, 2), (8, 3, 3)]:
        rho = analytic_rank(closed_form_L(*key))[0]
        assert rho <= balanced_count(*key)


def test_rank_formula_matches_analytic():
    for key in [(2, 3, 3), (4, 3, 3), (8, 3, 3), (9, 4, 4), (3, 4, 2), (9, 4, 2), (5, 3, 2), (25, 6, 3), (13, 2, 7), (11, 3, 4), (13, 5, 2)]:
        assert rank_formula(*key) == analytic_rank(closed_form_L(*key))[0], key
