"""Exact arithmetic in Z[zeta_m].

A CycInt stores the canonical representative of an element: the remainder of
its coefficient polynomial (in the power basis 1, zeta, ..., zeta^(m-1)) under
division by the m-th cyclotomic polynomial.  Any integer vector of length m can
be fed in; reduction happens once, at construction.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from sympy import Poly, Symbol, cyclotomic_poly as _sympy_cyclotomic, totient

_X = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficients of Phi_m in ascending order (monic, degree phi(m))."""
    if m < 1:
        raise ValueError("m must be positive")
    coeffs = Poly(_sympy_cyclotomic(m, _X), _X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(vec: Sequence[int], m: int) -> tuple:
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    a = [int(c) for c in vec]
    # fold exponents mod m first, zeta^m = 1
    if len(a) > m:
        folded = [0] * m
        for i, c in enumerate(a):
            folded[i % m] += c
        a = folded
    for top in range(len(a) - 1, n - 1, -1):
        c = a[top]
        if c:
            for t in range(n + 1):
                a[top - n + t] -= c * phi[t]
    a = a[:n] + [0] * (n - len(a))
    return tuple(a)


@lru_cache(maxsize=None)
def reduction_matrix(m: int) -> np.ndarray:
    """Integer m x phi(m) matrix whose row e is the canonical form of zeta^e."""
    n = int(totient(m))
    rows = []
    for e in range(m):
        v = [0] * m
        v[e] = 1
        rows.append(_reduce(v, m))
    mat = np.array(rows, dtype=np.int64).reshape(m, n)
    mat.flags.writeable = False
    return mat


class CycInt:
    """Element of Z[zeta_m]."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[int] = ()):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.coeffs = _reduce(coeffs, m)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycInt":
        v = [0] * m
        v[k % m] = 1
        return cls(m, v)

    @classmethod
    def integer(cls, m: int, n: int) -> "CycInt":
        return cls(m, [n])

    @classmethod
    def from_histogram(cls, m: int, hist) -> "CycInt":
        """Sum of hist[e] * zeta^e."""
        return cls(m, [int(c) for c in hist])

    def _check(self, other):
        if isinstance(other, int):
            return CycInt(self.m, [other])
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"mismatched orders {self.m} and {other.m}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.m, [a * other for a in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return other
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CycInt(self.m, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt(self.m, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt(self.m, [other])
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"CycInt({self.m}, {list(self.coeffs)})"

    def reduce(self) -> "CycInt":
        # values are stored canonically, so this is the identity
        return self

    def conjugate(self) -> "CycInt":
        """Image under zeta -> zeta^(-1)."""
        v = [0] * self.m
        for k, c in enumerate(self.coeffs):
            v[(-k) % self.m] += c
        return CycInt(self.m, v)

    def galois(self, a: int) -> "CycInt":
        """Image under zeta -> zeta^a for a prime to m."""
        v = [0] * self.m
        for k, c in enumerate(self.coeffs):
            v[(a * k) % self.m] += c
        return CycInt(self.m, v)

    def as_rational_integer(self) -> Optional[int]:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else 0

    def lift(self, m2: int) -> "CycInt":
        """The same element viewed in Z[zeta_m2], where m divides m2."""
        if m2 % self.m:
            raise ValueError(f"{self.m} does not divide {m2}")
        step = m2 // self.m
        v = [0] * m2
        for k, c in enumerate(self.coeffs):
            v[k * step] += c
        return CycInt(m2, v)
