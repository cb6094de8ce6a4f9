"""Combinatorics of Lambda = F_l[z]/(z^(r-1) + ... + 1) and its real subring.

Primes of Lambda of level s (1 < s | r) are the primes of Z[zeta_s] over l; the
factorization of Phi_s mod l is read off multiplicative orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from sympy import divisors, isprime, n_order, totient


@dataclass(frozen=True)
class LambdaPrime:
    ell: int
    r: int
    level: int
    residue_degree: int
    plus_residue_degree: int
    split_type: Optional[str]  # "inert" or "split" for level > 2
    count: int  # primes of Lambda at this level
    plus_count: int  # primes of Lambda+ at this level


def plus_order(ell: int, s: int) -> int:
    """Order of ell in (Z/s)^* / {+1, -1}."""
    k, x = 1, ell % s
    while x not in (1 % s, (-1) % s):
        x = (x * ell) % s
        k += 1
    return k


def _check(r, ell):
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if r % ell == 0:
        raise ValueError(f"ell = {ell} divides r = {r}")


def lambda_decomposition(r: int, ell: int) -> list:
    _check(r, ell)
    out = []
    for s in divisors(r):
        if s == 1:
            continue
        f = int(n_order(ell, s)) if s > 2 else 1
        fp = plus_order(ell, s)
        phi = int(totient(s))
        if s > 2:
            split = "inert" if f == 2 * fp else "split"
            plus_count = phi // 2 // fp
        else:
            split = None
            plus_count = 1
        out.append(LambdaPrime(ell, r, s, f, fp, split, phi // f, plus_count))
    if sum(x.count * x.residue_degree for x in out) != r - 1:
        raise ArithmeticError("degree bookkeeping fails")
    return out


def flambda_f3_count(r: int) -> int:
    """Number of primes of Lambda+ with residue field F_3 when ell = 3.

    Only levels s | 8 can have residue field inside F_9, and of those the real
    subrings at levels 2 and 4 are Z with residue field F_3 while level 8 gives
    F_9.  So the count is the number of s in {2, 4} dividing r."""
    count = sum(1 for s in (2, 4) if r % s == 0)
    if r % 3:
        direct = sum(x.plus_count for x in lambda_decomposition(r, 3) if x.plus_residue_degree == 1)
        if direct != count:
            raise ArithmeticError("F_3 count disagrees with the decomposition")
    return count


def sl2_order(N: int) -> int:
    return N * (N * N - 1)


def predicted_monodromy(r: int, ell: int):
    """(label, |G_chi|, factors) for the image of Galois on J_chi[ell]."""
    _check(r, ell)
    if ell == 2:
        return "dihedral", 2 * r, [2 * r]
    factors, labels = [], []
    for lp in lambda_decomposition(r, ell):
        N = ell ** lp.plus_residue_degree
        for _ in range(lp.plus_count):
            if ell == 3 and lp.level == 10:
                factors.append(120)
                labels.append("2.A5")
            else:
                factors.append(sl2_order(N))
                labels.append(f"SL2(F_{N})")
    order = 1
    for f in factors:
        order *= f
    return " x ".join(labels), order, factors


def torsion_vanishing(r: int, ell: int, extension: str) -> bool:
    """Whether J[ell](L) = 0 is asserted for every abelian (resp. solvable) L/K."""
    if extension == "abelian":
        return True
    if extension == "solvable":
        return ell > 3 or r % 2 == 1
    raise ValueError("extension must be 'abelian' or 'solvable'")


def torsion_vanishing_new_part(r: int, ell: int, extension: str) -> bool:
    """Same question for the new part J_r^new, where the solvable case only
    excludes r in {2, 4} with ell <= 3."""
    if extension == "abelian":
        return True
    if extension == "solvable":
        return ell > 3 or r not in (2, 4)
    raise ValueError("extension must be 'abelian' or 'solvable'")


def new_part_dimensions(r: int) -> dict:
    if r < 2:
        raise ValueError("need r >= 2")
    dims = {int(s): (int(totient(s)) if s > 1 else 0) for s in divisors(r)}
    if sum(dims.values()) != r - 1:
        raise ArithmeticError("dimensions do not add up to the genus")
    return dims
