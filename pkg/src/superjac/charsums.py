"""Multiplicative characters, Jacobi sums and the local traces a_{beta,q^n}.

Characters are fixed through the field generator g: the character of order
dividing d with exponent i sends g^k to zeta_d^(ik).  Trivial characters take
the value 1 at 0, nontrivial ones take the value 0 there.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from .cyclotomic import CycInt, reduction_matrix
from .ffield import FieldTable


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class CharPair:
    field: FieldTable
    d: int
    r: int
    i: int
    j: int

    @property
    def m(self) -> int:
        return lcm(self.d, self.r)


def _log_table(field: FieldTable, gen_power: int):
    """Discrete logs with respect to gen^gen_power (a unit mod q-1)."""
    n = field.q - 1
    if gen_power % n == 1 % n:
        return field.log
    inv = pow(gen_power, -1, n)
    log = field.log.copy()
    log[1:] = (log[1:] * inv) % n
    return log


def jacobi_sum(field: FieldTable, d: int, r: int, i: int, j: int, gen_power: int = 1) -> CycInt:
    """J(chi_i, rho_j) = sum over u + v + 1 = 0 of chi_i(u) rho_j(v), in Z[zeta_m].

    chi_i(g^k) = zeta_d^(ik) and rho_j(g^k) = zeta_r^(jk), m = lcm(d, r).  The
    characters must be well defined on F^*, i.e. d | i(q-1) and r | j(q-1).
    `gen_power` replaces the generator g by g^gen_power.
    """
    n = field.q - 1
    i %= d
    j %= r
    if (i * n) % d or (j * n) % r:
        raise ValueError(f"characters of orders dividing {d}, {r} are not defined on F_{field.q}")
    m = lcm(d, r)
    log = _log_table(field, gen_power)
    ci, cj = (m // d) * i, (m // r) * j
    u = np.arange(field.q, dtype=np.int64)
    v = field.vneg(field.vadd_one(u))
    both = (u != 0) & (v != 0)
    expo = (ci * log[u[both]] + cj * log[v[both]]) % m
    hist = np.bincount(expo, minlength=m).astype(object)
    # terms with u = 0 or v = 0 survive only for trivial characters
    minus_one = field.neg(1)
    if i == 0:
        # u = 0, v = -1
        hist[(cj * int(log[minus_one])) % m] += 1
    if j == 0:
        # v = 0, u = -1
        hist[(ci * int(log[minus_one])) % m] += 1
    return CycInt.from_histogram(m, [int(h) for h in hist])


# ---------------------------------------------------------------------------
# local traces

def _sum_matrix(s: int) -> np.ndarray:
    """M[k, e] = #{1 <= j < s : j*k = e mod s}: maps class counts to the
    zeta_s-histogram of sum_{j=1}^{s-1} phi^j."""
    mat = np.zeros((s, s), dtype=np.int64)
    for k in range(s):
        for j in range(1, s):
            mat[k, (j * k) % s] += 1
    return mat


def _certify(class_counts: np.ndarray, s: int) -> np.ndarray:
    """Evaluate -sum_j sum_k c_k zeta_s^(jk) exactly for each row of class
    counts and check that the results are rational integers."""
    hist = class_counts @ _sum_matrix(s)
    canon = hist @ reduction_matrix(s)
    if canon.shape[1] > 1 and canon[:, 1:].any():
        bad = int(np.nonzero(canon[:, 1:].any(axis=1))[0][0])
        raise ArithmeticError(f"character sum is not a rational integer (row {bad})")
    return -canon[:, 0]


def local_trace(field: FieldTable, r: int, d: int, beta: Optional[int]) -> int:
    """a_{beta,q^n} for beta in P^1(F_{q^n}); beta=None stands for infinity."""
    if field.p == 0 or r % field.p == 0:
        raise ValueError("the characteristic must not divide r")
    n = field.q - 1
    if beta is None:
        return gcd(gcd(d, r), n) - 1
    s = gcd(r, n)
    if s == 1:
        return 0
    alpha = field.pow(beta, d)
    gam = np.arange(field.q, dtype=np.int64)
    f = field.vmul(field.vmul(field.vpow(gam, r - 1), field.vadd_one(gam)),
                   field.vadd(gam, alpha))
    nz = f != 0
    counts = np.bincount(field.log[f[nz]] % s, minlength=s)
    return int(_certify(counts.reshape(1, s), s)[0])


def traces_by_alpha(field: FieldTable, r: int) -> np.ndarray:
    """Vector a[alpha] of the finite traces, indexed by the code of alpha = beta^d.

    The trace at beta depends only on alpha = beta^d.  The class counts
    c_k(alpha) = #{gamma : log f_alpha(gamma) = k mod s} are additive
    correlations over F_{q^n}, evaluated for all alpha at once with an FFT on
    (Z/p)^k; the integer results are checked against the rounding margin and
    then pushed through the exact Z[zeta_s] evaluation.
    """
    if r % field.p == 0:
        raise ValueError("the characteristic must not divide r")
    Q = field.q
    s = gcd(r, Q - 1)
    if s == 1:
        return np.zeros(Q, dtype=np.int64)
    gam = np.arange(Q, dtype=np.int64)
    g1 = field.vadd_one(gam)
    head = field.vmul(field.vpow(gam, r - 1), g1)  # gamma^(r-1)(gamma+1)
    shape = (field.p,) * field.k
    axes = tuple(range(field.k))
    u_hat, v_hat = [], []
    for a in range(s):
        ua = ((head != 0) & (field.log[head] % s == a)).astype(np.float64)
        vb = ((gam != 0) & (field.log[gam] % s == a)).astype(np.float64)
        u_hat.append(np.fft.fftn(ua.reshape(shape), axes=axes))
        v_hat.append(np.fft.fftn(vb.reshape(shape), axes=axes))
    counts = np.zeros((Q, s), dtype=np.int64)
    for k in range(s):
        acc = np.zeros(shape, dtype=np.complex128)
        for a in range(s):
            acc += np.conj(u_hat[a]) * v_hat[(k - a) % s]
        raw = np.fft.ifftn(acc, axes=axes).real.reshape(Q)
        rounded = np.rint(raw)
        if np.abs(raw - rounded).max() > 0.25:
            raise ArithmeticError("FFT rounding margin exceeded")
        counts[:, k] = rounded.astype(np.int64)
    return _certify(counts, s)


def traces_by_alpha_direct(field: FieldTable, r: int) -> np.ndarray:
    """Same as traces_by_alpha, by direct summation (O(q^2)); small fields only."""
    return np.array([local_trace(field, r, 1, a) for a in range(field.q)], dtype=np.int64)


def naive_point_count(field: FieldTable, r: int, alpha: int) -> int:
    """1 + #{(x, y) in F^2 : y^r = x^(r-1)(x+1)(x+alpha)}, by enumeration.

    For every x the number of y is read off the histogram of the r-th power map
    y -> y^r on the whole field.
    """
    y = np.arange(field.q, dtype=np.int64)
    npow = np.bincount(field.vpow(y, r), minlength=field.q)
    x = y
    c = field.vmul(field.vmul(field.vpow(x, r - 1), field.vadd_one(x)), field.vadd(x, alpha))
    return 1 + int(npow[c].sum())


__all__ = [
    "CharPair", "jacobi_sum", "local_trace", "traces_by_alpha", "naive_point_count", "lcm",
]
