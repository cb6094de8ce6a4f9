"""Small exact linear-algebra helpers on top of sympy's DomainMatrix.

Matrices come in as lists of rows of ints or Fractions; results come back as
ints and Fractions.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def _to_qq(rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    data = [[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in r] for r in rows]
    return DomainMatrix(data, (n, m), QQ)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(rows) -> int:
    if not rows:
        return 0
    return int(_to_qq(rows).rank())


def det(rows) -> Fraction:
    if not rows:
        return Fraction(1)
    return _frac(_to_qq(rows).det())


def rank_mod(rows, p: int) -> int:
    if not rows:
        return 0
    K = GF(p)
    data = [[K(int(x) % p) for x in r] for r in rows]
    return int(DomainMatrix(data, (len(data), len(data[0])), K).rank())


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a):
    return [list(c) for c in zip(*a)]


def gram(basis, inner=None):
    """Gram matrix of the row vectors in `basis` under the standard dot product
    (or under the symmetric matrix `inner`)."""
    if inner is None:
        return [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]
    ib = matmul(basis, inner)
    return [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in ib]


def solve_rows(rows, target):
    """Rational coefficients c with sum_k c_k rows[k] = target, or None."""
    A = _to_qq(transpose(rows))  # columns are the rows
    b = _to_qq([[x] for x in target])
    aug = A.hstack(b)
    rref, pivots = aug.rref()
    ncols = len(rows)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    dense = rref.to_Matrix()
    for row_idx, col in enumerate(pivots):
        sol[col] = Fraction(str(dense[row_idx, ncols]))
    return sol


def leading_minors(rows):
    return [det([r[:k] for r in rows[:k]]) for k in range(1, len(rows) + 1)]
