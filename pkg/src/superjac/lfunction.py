"""Orbits on S, the L-function two ways, analytic rank and the rank formula.

L-functions are integer polynomials in T = q^(-s) with constant term 1, kept as
ascending coefficient tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import numpy as np
from sympy import divisors, n_order, totient

from .charsums import jacobi_sum, lcm, local_trace, traces_by_alpha
from .cyclotomic import CycInt
from .ffield import DEFAULT_CAP, build_field, prime_power


@dataclass(frozen=True)
class LPoly:
    coeffs: tuple
    q: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if n == 0 else f"{c}*T^{n}")
        return " + ".join(terms) or "0"


def _frac(i, n):
    return Fraction(i % n, n)


@dataclass
class OrbitSet:
    q: int
    d: int
    r: int
    S: list
    orbits: list
    A: set = dc_field(default_factory=set)
    B: set = dc_field(default_factory=set)

    @property
    def m(self) -> int:
        return lcm(self.d, self.r)


def index_set(d: int, r: int) -> list:
    """S = {(i, j) : i != 0, j != 0, <i/d> + <j/r> not an integer}."""
    return [(i, j) for i in range(1, d) for j in range(1, r)
            if (_frac(i, d) + _frac(j, r)).denominator != 1]


def _orbit(pt, mult, d, r):
    out = [pt]
    i, j = pt
    while True:
        i, j = (i * mult) % d, (j * mult) % r
        if (i, j) == pt:
            return out
        out.append((i, j))


def orbit_decomposition(q: int, d: int, r: int) -> OrbitSet:
    p, _ = prime_power(q)
    if (d * r) % p == 0:
        raise ValueError(f"the characteristic {p} divides rd = {r * d}")
    S = index_set(d, r)
    seen, orbits = set(), []
    for pt in S:
        if pt not in seen:
            o = _orbit(pt, q, d, r)
            seen.update(o)
            orbits.append(tuple(o))
    A = {pt for pt in S if _frac(pt[0], d) + _frac(pt[1], r) > 1}
    B = set(S) - A
    return OrbitSet(q, d, r, S, orbits, A, B)


def is_balanced(orbit, oset: OrbitSet, p: int) -> bool:
    """Balanced test on the <p>-saturation of the orbit (closure under x -> px)."""
    d, r, m = oset.d, oset.r, oset.m
    sat = set()
    for pt in orbit:
        sat.update(_orbit(pt, p, d, r))
    for t in range(1, m):
        if gcd(t, m) != 1:
            continue
        moved = {((t * i) % d, (t * j) % r) for i, j in sat}
        if len(moved & oset.A) != len(moved & oset.B):
            return False
    return True


def balanced_count(q: int, d: int, r: int) -> int:
    """Number of balanced orbits; bounds the order of vanishing at T = 1/q."""
    p, _ = prime_power(q)
    oset = orbit_decomposition(q, d, r)
    return sum(1 for o in oset.orbits if is_balanced(o, oset, p))


# ---------------------------------------------------------------------------
# polynomial helpers

def _poly_mul(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def closed_form_L(q: int, d: int, r: int, gen_powers: dict | None = None,
                  cap: int = DEFAULT_CAP, cache_dir: str | None = None) -> LPoly:
    """prod over orbits o of (1 - J_o^2 T^|o|), J_o over F_{q^|o|}.

    `gen_powers` maps an extension degree n to an exponent a; the field
    F_{q^n} is then used with generator g^a instead of g.
    """
    p, e = prime_power(q)
    oset = orbit_decomposition(q, d, r)
    m = oset.m
    poly = [CycInt(m, [1])]
    for o in oset.orbits:
        n = len(o)
        F = build_field(p, e * n, cap=cap, cache_dir=cache_dir)
        a = (gen_powers or {}).get(n, 1)
        J = jacobi_sum(F, d, r, *o[0], gen_power=a)
        if J * J.conjugate() != CycInt(m, [q ** n]):
            raise ArithmeticError(f"Jacobi sum for orbit {o} fails the Weil size check")
        factor = [CycInt(m, [1])] + [CycInt(m)] * (n - 1) + [-(J * J)]
        poly = _poly_mul(poly, factor, CycInt(m))
    coeffs = []
    for c in poly:
        v = c.as_rational_integer()
        if v is None:
            raise ArithmeticError("closed-form L has a non-rational coefficient")
        coeffs.append(v)
    return LPoly(tuple(coeffs), q)


def degree_bound(d: int, r: int) -> int:
    return (d - 1) * (r - 1) - (gcd(d, r) - 1)


def _weights(F, d):
    """w[alpha] = #{beta in F : beta^d = alpha}."""
    n = F.q - 1
    g = gcd(d, n)
    w = np.zeros(F.q, dtype=np.int64)
    w[0] = 1
    logs = F.log[1:]
    w[1:] = np.where(logs % g == 0, g, 0)
    return w


def point_trace_sum(q: int, d: int, r: int, n: int, cap: int = DEFAULT_CAP,
                    cache_dir: str | None = None) -> int:
    """A_n = sum over beta in P^1(F_{q^n}) of a_{beta,q^n}."""
    p, e = prime_power(q)
    F = build_field(p, e * n, cap=cap, cache_dir=cache_dir)
    a = traces_by_alpha(F, r)
    return local_trace(F, r, d, None) + int((_weights(F, d) * a).sum())


def series_exp(A) -> list:
    """Coefficients of exp(sum_{n>=1} A[n-1] T^n / n) up to degree len(A), exactly."""
    N = len(A)
    L = [Fraction(1)]
    for n in range(1, N + 1):
        L.append(sum(A[k - 1] * L[n - k] for k in range(1, n + 1)) / n)
    return L


def brute_force_L(q: int, d: int, r: int, N: int | None = None, cap: int = DEFAULT_CAP,
                  cache_dir: str | None = None) -> LPoly:
    """L(T) from point traces: log L = sum_n A_n T^n / n, truncated at degree N."""
    if N is None:
        N = degree_bound(d, r)
    A = [point_trace_sum(q, d, r, n, cap=cap, cache_dir=cache_dir) for n in range(1, N + 1)]
    L = series_exp(A)
    coeffs = []
    for c in L:
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c} in the L-series")
        coeffs.append(int(c))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return LPoly(tuple(coeffs), q)


def analytic_rank(L: LPoly):
    """(rho, M, M(1/q)) with L = (1 - qT)^rho M and M(1/q) != 0."""
    q = L.q
    M = list(L.coeffs)
    rho = 0
    while True:
        # synthetic division by (1 - qT): quotient c satisfies c_n - q c_{n-1} = M_n
        if sum(Fraction(c, q ** n) for n, c in enumerate(M)) != 0:
            break
        quot = [M[0]]
        for n in range(1, len(M) - 1):
            quot.append(M[n] + q * quot[-1])
        if M[-1] + q * quot[-1] != 0:
            raise ArithmeticError("inexact division by 1 - qT")
        M = quot
        rho += 1
    lead = sum(Fraction(c, q ** n) for n, c in enumerate(M))
    return rho, LPoly(tuple(M), q), lead


def _nu_for(n: int, p: int, bound: int = 64):
    for nu in range(1, bound + 1):
        if (p ** nu + 1) % n == 0:
            return nu
    return None


def rank_formula(q: int, d: int, r: int, nu_bound: int = 64) -> int:
    """sum_{e|d, 1<s|r} phi(e)phi(s)/o_q(lcm(e,s)) - sum_{1<s|r} c_s phi(s)/o_q(s).

    The pairs removed from the full count are those with i = 0 and those with
    i/d + j/r an integer; the latter exist at level s only when s | d, so
    c_s = 2 if s | d and 1 otherwise.  For r | d this is the familiar
    "- 2 sum" form.  Needs r and d to divide a common p^nu + 1.
    """
    p, _ = prime_power(q)
    if _nu_for(lcm(d, r), p, nu_bound) is None:
        raise ValueError(f"could not find nu <= {nu_bound} with r and d dividing {p}^nu + 1")
    total = Fraction(0)
    for e in divisors(d):
        for s in divisors(r):
            if s > 1:
                total += Fraction(int(totient(e) * totient(s)), int(n_order(q, lcm(e, s))))
    for s in divisors(r):
        if s > 1:
            c = 2 if d % s == 0 else 1
            total -= c * Fraction(int(totient(s)), int(n_order(q, s)))
    if total.denominator != 1:
        raise ArithmeticError("rank formula is not an integer")
    return int(total)
