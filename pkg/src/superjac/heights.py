"""Height pairing on the visible subgroup and the discriminant identities.

All values are the rational normalization of the canonical height (the log of
the constant-field size is divided out), so everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .groupring import (GroupRingElem, group_pairing, ideal_basis, idx, sigma_sum,
                        smith_normal_form, splitting_rho, tau_sum, twisted_sum)


def _check(d, r):
    if d < 3 or r < 2 or d % r:
        raise ValueError("need d >= 3, r >= 2 and r | d")


def height_pair(d: int, r: int, ij) -> Fraction:
    """<P_ij, P_00> from the six-case table with prefactor -(d-1)/(rd)."""
    _check(d, r)
    i, j = ij[0] % d, ij[1] % r
    if i == 0 and j == 0:
        v = -(r - 1) * (d - 2)
    elif j == 0 and i % r:
        v = r - 2
    elif j == 0:
        v = 2 * r - 2
    elif i == 0:
        v = d - 2
    elif (i + j) % r == 0 and i % r:
        v = r - 2
    else:
        v = -2
    return Fraction(-(d - 1) * v, r * d)


def height_table(d: int, r: int) -> dict:
    return {(i, j): height_pair(d, r, (i, j)) for i in range(d) for j in range(r)}


def gram_matrix(d: int, r: int):
    """rd x rd matrix <P_ij, P_i'j'> = h(i - i', j - j') in the monomial order."""
    h = height_table(d, r)
    n = r * d
    G = [[Fraction(0)] * n for _ in range(n)]
    for j in range(r):
        for i in range(d):
            a = idx(d, i, j, r)
            for j2 in range(r):
                for i2 in range(d):
                    G[a][idx(d, i2, j2, r)] = h[((i - i2) % d, (j - j2) % r)]
    return G


def kernel_check(d: int, r: int) -> bool:
    """G v = 0 for every ideal-basis row v."""
    G = gram_matrix(d, r)
    _, _, M = ideal_basis(d, r)
    return all(all(sum(g * x for g, x in zip(row, v)) == 0 for row in G) for v in M)


def proportionality_check(d: int, r: int) -> bool:
    """h(i, j) = (d - 1) <sigma^i tau^j, 1> for all (i, j)."""
    return all(height_pair(d, r, (i, j)) == (d - 1) * group_pairing(d, r, (i, j))
               for i in range(d) for j in range(r))


def disc_ideal_formula(d: int, r: int) -> int:
    return r ** (d + 2) * d ** (2 * r - 2)


def ideal_gram_basis(d: int, r: int):
    """alpha_i = sigma^i sum tau^j, beta_j = (tau^j - 1) sum sigma^i,
    gamma_j = (tau^j - 1) sum sigma^i tau^(d-i)."""
    ts, ss, tw = tau_sum(d, r), sigma_sum(d, r), twisted_sum(d, r)
    rows = [GroupRingElem.monomial(d, r, i, 0) * ts for i in range(d)]
    for j in range(1, r):
        tj = GroupRingElem.from_terms(d, r, [(1, 0, j), (-1, 0, 0)])
        rows.append(tj * ss)
    for j in range(1, r):
        tj = GroupRingElem.from_terms(d, r, [(1, 0, j), (-1, 0, 0)])
        rows.append(tj * tw)
    return [x.coeffs for x in rows]


def disc_ideal(d: int, r: int) -> int:
    """det(I) = r^(d+2) d^(2r-2), checked against the Gram determinant."""
    _check(d, r)
    value = linalg.det(linalg.gram(ideal_gram_basis(d, r)))
    expected = disc_ideal_formula(d, r)
    if value != expected:
        raise ArithmeticError(f"det(I) = {value}, expected {expected}")
    return expected


def disc_V_formula(d: int, r: int) -> Fraction:
    return (Fraction(d - 1) ** ((r - 1) * (d - 2)) * Fraction(r) ** (4 - d)
            * Fraction(d) ** (2 - 2 * r))


def disc_W_formula(d: int, r: int) -> Fraction:
    return Fraction(r) ** (4 - d) * Fraction(d) ** (2 - 2 * r)


def free_basis(d: int, r: int):
    """Integer vectors in R whose images form a Z-basis of (R/I)/torsion.

    With U M V = D, the rows of V^(-1) form a basis of Z^rd adapted to the
    ideal; those past the rank of M span a complement of the saturation of I.
    """
    _, _, M = ideal_basis(d, r)
    factors, _, _, _, Vinv = smith_normal_form(M)
    k = sum(1 for f in factors if f)
    return Vinv[k:]


def lattice_gram(d: int, r: int, scale=1):
    basis = free_basis(d, r)
    images = [splitting_rho(d, r, GroupRingElem(d, r, [Fraction(c) for c in b])).coeffs
              for b in basis]
    G = linalg.gram(images)
    return [[scale * x for x in row] for row in G]


def disc_W_mod_torsion(d: int, r: int) -> Fraction:
    """det of the group pairing on (R/I)/tor, by lattice computation."""
    _check(d, r)
    return linalg.det(lattice_gram(d, r))


def disc_V_mod_torsion(d: int, r: int) -> Fraction:
    """det(V/tor) = (d-1)^((r-1)(d-2)) r^(4-d) d^(2-2r), checked by lattice
    computation, together with det(W/tor) * det(I) = r^6."""
    _check(d, r)
    w = disc_W_mod_torsion(d, r)
    value = Fraction(d - 1) ** ((r - 1) * (d - 2)) * w
    expected = disc_V_formula(d, r)
    if value != expected:
        raise ArithmeticError(f"det(V/tor) = {value}, expected {expected}")
    if w * disc_ideal(d, r) != r ** 6:
        raise ArithmeticError("det(W/tor) * det(I) != r^6")
    return expected


def positive_definite_on_complement(d: int, r: int) -> bool:
    """Leading principal minors of the height Gram on the free basis are positive."""
    G = gram_matrix(d, r)
    B = [[Fraction(c) for c in b] for b in free_basis(d, r)]
    sub = linalg.matmul(linalg.matmul(B, G), linalg.transpose(B))
    return all(m > 0 for m in linalg.leading_minors(sub))
