"""Explicit finite fields F_{p^k} with a full discrete-log table.

Elements are encoded as integers: the polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1}
over F_p is stored as c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Zero is code 0 and one is
code 1.  Multiplication goes through the log/exp tables, addition is digit-wise.

The modulus is the smallest monic irreducible polynomial of degree k, where
candidates are ordered by the integer code of their lower coefficients, and the
generator is the smallest code of exact multiplicative order p^k - 1.  Both choices
are therefore reproducible on every machine.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import isqrt

import numpy as np
from sympy import factorint, isprime

DEFAULT_CAP = 1 << 22
CAP_VERSION = 1


class FieldCapError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficient lists in ascending order

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, f, p):
    """a*b mod f over F_p; f is monic."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, f, p)


def _poly_mod(a, f, p):
    a = list(a)
    k = len(f) - 1
    for top in range(len(a) - 1, k - 1, -1):
        c = a[top] % p
        if c:
            for t in range(k + 1):
                a[top - k + t] = (a[top - k + t] - c * f[t]) % p
    return _trim([x % p for x in a[:k]])


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        monic = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, monic, p)
    return a


def is_irreducible(f, p):
    """Rabin-style test: f has no factor of degree j <= k/2."""
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(1, k // 2 + 1):
        xp = _poly_powmod(xp, p, f, p)
        g = _poly_gcd(f, _poly_sub(xp, x, p), p)
        if len(g) > 1:
            return False
    return True


def _digits(code, p, k):
    out = []
    for _ in range(k):
        code, c = divmod(code, p)
        out.append(c)
    return out


def _code(digs, p):
    c = 0
    for x in reversed(digs):
        c = c * p + x
    return c


def find_modulus(p: int, k: int) -> tuple:
    for low in range(p ** k):
        f = _digits(low, p, k) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------

class FieldTable:
    """An explicit field F_{p^k}.

    Attributes: p, k, q (the cardinality), modulus (ascending coefficients, monic),
    gen (code of the generator), exp (numpy array, exp[e] = gen^e for 0 <= e < q-1)
    and log (numpy array indexed by code, log[0] = -1).
    """

    def __init__(self, p, k, modulus, gen, exp, log):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self.gen = gen
        self.exp = exp
        self.log = log
        self.exp.flags.writeable = False
        self.log.flags.writeable = False
        self._pw = np.array([p ** i for i in range(k)], dtype=np.int64)

    def __repr__(self):
        return f"FieldTable(p={self.p}, k={self.k})"

    @property
    def order(self):
        return self.q - 1

    # scalar arithmetic ----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = _digits(a, self.p, self.k), _digits(b, self.p, self.k)
        return _code([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _code([(-x) % self.p for x in _digits(a, self.p, self.k)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-int(self.log[a])) % (self.q - 1)])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("dlog of 0")
        return int(self.log[a])

    def embed(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_{p^k}."""
        return n % self.p

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    # vectorized arithmetic on arrays of codes ------------------------------
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._pw:
            out += (((a // pw) % self.p + (b // pw) % self.p) % self.p) * pw
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        for pw in self._pw:
            out += ((-(a // pw)) % self.p) * pw
        return out

    def vadd_one(self, a):
        a = np.asarray(a, dtype=np.int64)
        low = a % self.p
        return a - low + (low + 1) % self.p

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        prod = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        res = self.exp[(self.log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, res)


def _mult_matrix(h_digits, modulus, p, k):
    """Matrix of multiplication by h on the power basis (row vectors)."""
    rows = []
    xi = [1]
    for _ in range(k):
        prod = _poly_mulmod(xi, h_digits, list(modulus), p)
        rows.append(prod + [0] * (k - len(prod)))
        xi = _poly_mulmod(xi, [0, 1], list(modulus), p)
    return np.array(rows, dtype=np.int64)


def _find_generator(p, k, modulus):
    q = p ** k
    if q == 2:
        return 1
    primes = list(factorint(q - 1))
    f = list(modulus)
    for g in range(2, q):
        gd = _trim(_digits(g, p, k))
        if all(_poly_powmod(gd, (q - 1) // ell, f, p) != [1] for ell in primes):
            return g
    raise AssertionError("no generator found")


def _exp_table(p, k, modulus, gen):
    q = p ** k
    n = q - 1
    pw = np.array([p ** i for i in range(k)], dtype=np.int64)
    block = max(1, isqrt(n))
    gmat = _mult_matrix(_trim(_digits(gen, p, k)), modulus, p, k)
    first = np.zeros((block, k), dtype=np.int64)
    cur = np.zeros(k, dtype=np.int64)
    cur[0] = 1
    for e in range(block):
        first[e] = cur
        cur = (cur @ gmat) % p
    # cur is now gen^block
    hmat = _mult_matrix(_trim([int(c) for c in cur]), modulus, p, k)
    out = np.empty(((n + block - 1) // block) * block, dtype=np.int64)
    rows = first
    for start in range(0, n, block):
        out[start:start + block] = rows @ pw
        rows = (rows @ hmat) % p
    return out[:n]


def _cache_path(cache_dir, p, k):
    return os.path.join(cache_dir, f"field_p{p}_k{k}_v{CAP_VERSION}.npz")


@lru_cache(maxsize=64)
def _build(p, k, cap, cache_dir):
    if cache_dir:
        path = _cache_path(cache_dir, p, k)
        if os.path.exists(path):
            data = np.load(path)
            return FieldTable(p, k, tuple(int(c) for c in data["modulus"]),
                              int(data["gen"]), data["exp"], data["log"])
    modulus = find_modulus(p, k)
    gen = _find_generator(p, k, modulus)
    exp = _exp_table(p, k, modulus, gen)
    q = p ** k
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1, dtype=np.int64)
    if (log[1:] < 0).any():
        raise AssertionError("generator does not generate F_q^*")
    field = FieldTable(p, k, modulus, gen, exp, log)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = _cache_path(cache_dir, p, k) + ".tmp.npz"
        np.savez(tmp, modulus=np.array(modulus), gen=gen, exp=exp, log=log)
        os.replace(tmp, _cache_path(cache_dir, p, k))
    return field


def build_field(p: int, k: int = 1, cap: int = DEFAULT_CAP, cache_dir: str | None = None) -> FieldTable:
    """Return the field with p^k elements.

    Raises ValueError if p is not prime or k < 1, and FieldCapError if p^k
    exceeds `cap`.  Results are memoized in-process; when `cache_dir` is given
    the tables are also stored there as .npz files.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if p ** k > cap:
        raise FieldCapError(f"field of size {p}^{k} exceeds the cap of {cap} elements")
    return _build(p, k, cap, cache_dir)


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p^e with p prime, or raise ValueError."""
    fac = factorint(q)
    if q < 2 or len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = fac.items()
    return int(p), int(e)
