from fractions import Fraction

import pytest

from superjac import linalg
from superjac.heights import (disc_ideal, disc_V_formula, disc_V_mod_torsion, disc_W_formula,
                              disc_W_mod_torsion, gram_matrix, height_pair, kernel_check,
                              positive_definite_on_complement, proportionality_check)

GRID = [(d, r) for d in range(3, 13) for r in range(2, d + 1) if d % r == 0 and r * d <= 40]


def test_height_examples():
    # d = r = 3: prefactor -(2)/9
    assert height_pair(3, 3, (0, 0)) == Fraction(4, 9)
    assert height_pair(3, 3, (1, 0)) == Fraction(-2, 9)
    assert height_pair(3, 3, (1, 2)) == Fraction(-2, 9)
    assert height_pair(3, 3, (1, 1)) == Fraction(4, 9)


@pytest.mark.parametrize("d,r", [(3, 3), (4, 2), (4, 4), (6, 3)])
def test_gram_basic(d, r):
    G = gram_matrix(d, r)
    n = d * r
    assert all(G[a][b] == G[b][a] for a in range(n) for b in range(n))
    assert linalg.rank(G) == (r - 1) * (d - 2)
    assert kernel_check(d, r)
    assert positive_definite_on_complement(d, r)


@pytest.mark.parametrize("d,r", GRID)
def test_discriminants(d, r):
    assert proportionality_check(d, r)
    assert disc_ideal(d, r) == r ** (d + 2) * d ** (2 * r - 2)
    assert disc_W_mod_torsion(d, r) == disc_W_formula(d, r)
    assert disc_V_mod_torsion(d, r) == disc_V_formula(d, r)


def test_regime():
    with pytest.raises(ValueError):
        height_pair(5, 3, (0, 0))
