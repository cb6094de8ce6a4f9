"""The group ring R = Z[sigma, tau]/(sigma^d - 1, tau^r - 1) and the ideal I.

Elements are coefficient vectors of length r*d; the monomial sigma^i tau^j sits
at index j*d + i, so the basis is ordered 1, sigma, ..., sigma^(d-1), tau,
sigma*tau, ...  Coefficients may be ints or Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg


def idx(d: int, i: int, j: int, r: int) -> int:
    return (j % r) * d + (i % d)


class GroupRingElem:
    __slots__ = ("d", "r", "coeffs")

    def __init__(self, d: int, r: int, coeffs: Sequence | None = None):
        self.d = d
        self.r = r
        if coeffs is None:
            coeffs = [0] * (r * d)
        if len(coeffs) != r * d:
            raise ValueError("coefficient vector has the wrong length")
        self.coeffs = list(coeffs)

    @classmethod
    def monomial(cls, d, r, i, j, c=1):
        x = cls(d, r)
        x.coeffs[idx(d, i, j, r)] = c
        return x

    @classmethod
    def from_terms(cls, d, r, terms):
        """Build sum c * sigma^i tau^j from an iterable of (c, i, j)."""
        x = cls(d, r)
        for c, i, j in terms:
            x.coeffs[idx(d, i, j, r)] += c
        return x

    def __getitem__(self, ij):
        i, j = ij
        return self.coeffs[idx(self.d, i, j, self.r)]

    def _same(self, other):
        if (self.d, self.r) != (other.d, other.r):
            raise ValueError("elements of different group rings")

    def __add__(self, other):
        self._same(other)
        return GroupRingElem(self.d, self.r, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return GroupRingElem(self.d, self.r, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GroupRingElem(self.d, self.r, [-a for a in self.coeffs])

    def scale(self, c):
        return GroupRingElem(self.d, self.r, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, GroupRingElem):
            return self.scale(other)
        self._same(other)
        d, r = self.d, self.r
        out = [0] * (r * d)
        terms = [(k % d, k // d, c) for k, c in enumerate(other.coeffs) if c]
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            i, j = k % d, k // d
            for i2, j2, b in terms:
                out[((j + j2) % r) * d + (i + i2) % d] += a * b
        return GroupRingElem(d, r, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return (self.d, self.r) == (other.d, other.r) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"{c}*s^{k % self.d}t^{k // self.d}" for k, c in enumerate(self.coeffs) if c]
        return f"GroupRingElem(d={self.d}, r={self.r}: {' + '.join(terms) or '0'})"

    def dot(self, other):
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    def is_zero(self):
        return not any(self.coeffs)


# standard elements ----------------------------------------------------------

def sigma_sum(d, r):
    return GroupRingElem.from_terms(d, r, [(1, i, 0) for i in range(d)])


def tau_sum(d, r):
    return GroupRingElem.from_terms(d, r, [(1, 0, j) for j in range(r)])


def twisted_sum(d, r):
    """sum_i sigma^i tau^(d-i)."""
    return GroupRingElem.from_terms(d, r, [(1, i, d - i) for i in range(d)])


def tau_diff(d, r, j):
    """tau^j - tau^(j-1)."""
    return GroupRingElem.from_terms(d, r, [(1, 0, j), (-1, 0, j - 1)])


def ideal_generators(d, r):
    """The three generators of I as an ideal."""
    t1 = GroupRingElem.from_terms(d, r, [(1, 0, 1), (-1, 0, 0)])
    return [t1 * sigma_sum(d, r), t1 * twisted_sum(d, r), tau_sum(d, r)]


def ideal_basis(d: int, r: int):
    """Z-basis f_0..f_{d-1}, d_1..d_{r-1}, e_1..e_{r-1} of I.

    Returns (labels, elements, integer matrix with one row per element)."""
    labels, rows = [], []
    ts = tau_sum(d, r)
    for i in range(d):
        labels.append(f"f{i}")
        rows.append(GroupRingElem.monomial(d, r, i, 0) * ts)
    ss, tw = sigma_sum(d, r), twisted_sum(d, r)
    for j in range(1, r):
        labels.append(f"d{j}")
        rows.append(tau_diff(d, r, j) * ss)
    for j in range(1, r):
        labels.append(f"e{j}")
        rows.append(tau_diff(d, r, j) * tw)
    return labels, rows, [list(x.coeffs) for x in rows]


# Smith normal form ------------------------------------------------------------

def smith_normal_form(M):
    """Smith normal form of an integer matrix.

    Returns (factors, U, V, Uinv, Vinv) with U*M*V = D diagonal, U and V
    unimodular, and factors the diagonal of D (length min(n, m)), each dividing
    the next.  Pivots are chosen of least absolute value.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    A = [list(map(int, row)) for row in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Uinv = [row[:] for row in U]
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    Vinv = [row[:] for row in V]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for row in Uinv:
            row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]
        Vinv[j], Vinv[k] = Vinv[k], Vinv[j]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= c * row[dst]

    def add_col(src, dst, c):
        # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        Vinv[src] = [a - c * b for a, b in zip(Vinv[src], Vinv[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    t = 0
    while t < min(n, m):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, m) if A[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, m):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, n) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, m) if A[t][j]]
            _, pi, pj = min(cand)
            swap_rows(t, pi)
            swap_cols(t, pj)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    factors = [A[i][i] for i in range(min(n, m))]
    return factors, U, V, Uinv, Vinv


def quotient_structure(d: int, r: int):
    """Invariant factors and free rank of R/I."""
    _, _, M = ideal_basis(d, r)
    factors, *_ = smith_normal_form(M)
    nonzero = [f for f in factors if f]
    return nonzero, r * d - len(nonzero)


def torsion_structure(d: int, r: int) -> tuple:
    """Last three nonzero invariant factors of R/I (the torsion lives there)."""
    if d < 3 or r < 2 or d % r:
        raise ValueError("need d >= 3, r >= 2 and r | d")
    nonzero, _ = quotient_structure(d, r)
    if len(nonzero) != d + 2 * r - 2 or any(f != 1 for f in nonzero[:-3]):
        raise ArithmeticError("unexpected shape of the invariant factors")
    return tuple(nonzero[-3:])


def expected_torsion(r: int) -> tuple:
    if r % 2:
        return (r, r, r)
    return (r // 2, r, 2 * r)


# splitting and pairing ------------------------------------------------------

def rho_kernel_element(d: int, r: int) -> GroupRingElem:
    """The element 1 + 2/(rd) sum sigma^i tau^j - 1/d sum sigma^i
    - 1/d sum sigma^i tau^(-i) - 1/r sum tau^j of R tensor Q."""
    if d % r:
        raise ValueError("the splitting formula needs r | d")
    out = GroupRingElem.monomial(d, r, 0, 0, Fraction(1))
    out = out + GroupRingElem(d, r, [Fraction(2, r * d)] * (r * d))
    out = out - sigma_sum(d, r).scale(Fraction(1, d))
    out = out - GroupRingElem.from_terms(d, r, [(1, i, -i) for i in range(d)]).scale(Fraction(1, d))
    out = out - tau_sum(d, r).scale(Fraction(1, r))
    return out


def splitting_rho(d: int, r: int, x: GroupRingElem) -> GroupRingElem:
    return x * rho_kernel_element(d, r)


def group_pairing_table(d: int, r: int, i: int, j: int) -> Fraction:
    """<sigma^i tau^j, 1> on R^0/I^0 from the six-case table."""
    i, j = i % d, j % r
    if i == 0 and j == 0:
        v = (r - 1) * (d - 2)
    elif j == 0 and i % r:
        v = 2 - r
    elif j == 0:
        v = 2 - 2 * r
    elif i == 0:
        v = 2 - d
    elif i % r and (i + j) % r == 0:
        v = 2 - r
    else:
        v = 2
    return Fraction(v, r * d)


def group_pairing(d: int, r: int, ij) -> Fraction:
    """<sigma^i tau^j, 1> computed both from the table and as
    <rho(sigma^i tau^j), rho(1)>; raises if they differ."""
    i, j = ij
    table = group_pairing_table(d, r, i, j)
    x = splitting_rho(d, r, GroupRingElem.monomial(d, r, i, j))
    one = splitting_rho(d, r, GroupRingElem.monomial(d, r, 0, 0))
    direct = x.dot(one)
    if direct != table:
        raise ArithmeticError(f"pairing mismatch at {ij}: table {table}, direct {direct}")
    return table


def in_ideal_span(d: int, r: int, x: GroupRingElem) -> bool:
    _, _, M = ideal_basis(d, r)
    return linalg.solve_rows(M, x.coeffs) is not None


# torsion identities ---------------------------------------------------------

def q2_element(d: int, r: int) -> GroupRingElem:
    """sum_{j=0}^{r-1} sum_{k=0}^{r-1-j} sum_{i = k mod r} sigma^i tau^j."""
    terms = [(1, i, j) for j in range(r) for k in range(r - j) for i in range(k, d, r)]
    return GroupRingElem.from_terms(d, r, terms)


def check_torsion_identities(d: int, r: int) -> bool:
    """Verify the group-ring identities behind rQ_2 = 0 (r odd), and 2rQ_2 = 0
    and (r/2)(Q_0 - 2Q_2) = 0 (r even)."""
    if d % r:
        raise ValueError("need r | d")
    _, elems, _ = ideal_basis(d, r)
    f = elems[:d]
    dj = [None] + elems[d:d + r - 1]
    ej = [None] + elems[d + r - 1:]
    zero = GroupRingElem(d, r)
    Q2 = q2_element(d, r)

    def f_block(j):
        acc = zero
        for i in range(j, d, r):
            acc = acc + f[i]
        return acc

    ok = True
    if r % 2:
        lhs = zero
        for j in range(r):
            if j:
                lhs = lhs + (dj[j] - ej[j]).scale(j * (j - r) // 2)
            lhs = lhs + f_block(j).scale(r - j)
        ok &= lhs == Q2.scale(r)
    else:
        lhs = zero
        for j in range(r):
            if j:
                lhs = lhs + (dj[j] - ej[j]).scale(j * (j - r))
            lhs = lhs + f_block(j).scale(2 * (r - j))
        ok &= lhs == Q2.scale(2 * r)
        lhs = zero
        for j in range(1, r):
            lhs = lhs + (dj[j] - ej[j]).scale((1 - j) * (j - r) // 2)
        for j in range(r):
            lhs = lhs - f_block(j).scale(r - j)
        q0 = GroupRingElem.from_terms(d, r, [(1, i, 0) for i in range(d)] + [(-1, i, -i) for i in range(d)])
        ok &= lhs == (q0 - Q2.scale(2)).scale(r // 2)
    return bool(ok)
