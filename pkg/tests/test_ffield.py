import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superjac.ffield import FieldCapError, build_field, find_modulus, is_irreducible, prime_power

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 6), (3, 5)]


def test_small_examples():
    F4 = build_field(2, 2)
    assert F4.modulus == (1, 1, 1)
    assert F4.gen == 2
    assert build_field(5).gen == 2
    F9 = build_field(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert F9.gen == 4


@pytest.mark.parametrize("p,k", SMALL)
def test_tables_are_inverse(p, k):
    F = build_field(p, k)
    n = F.q - 1
    assert sorted(F.exp.tolist()) == list(range(1, F.q))
    assert all(F.log[F.exp[e]] == e for e in range(n))
    assert F.pow(F.gen, n) == 1
    assert all(F.pow(F.gen, n // f) != 1 for f in range(2, n + 1) if n % f == 0 and all(f % g for g in range(2, f)))


def test_frobenius_fixes_everything():
    # x^q = x on every field with q <= 2^12, and Frobenius is additive
    for p in (2, 3, 5, 7, 11, 13):
        k = 1
        while p ** k <= 1 << 12:
            F = build_field(p, k)
            x = F.elements()
            assert np.array_equal(F.vpow(x, F.q), x)
            fx = F.vpow(x, p)
            y = x[::-1].copy()
            assert np.array_equal(F.vpow(F.vadd(x, y), p), F.vadd(fx, F.vpow(y, p)))
            k += 1


def test_modulus_is_irreducible():
    for p, k in SMALL:
        f = find_modulus(p, k)
        assert len(f) == k + 1 and f[-1] == 1
        assert is_irreducible(list(f), p)


def test_non_prime_and_cap():
    with pytest.raises(ValueError):
        build_field(4)
    with pytest.raises(FieldCapError):
        build_field(2, 30, cap=1 << 20)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(12)


def test_cache_roundtrip(tmp_path):
    from superjac.ffield import _build
    a = _build(3, 3, 1 << 22, str(tmp_path))
    b = _build(3, 3, 1 << 22, str(tmp_path))  # second call reads the npz
    assert list(tmp_path.iterdir())
    assert np.array_equal(a.exp, b.exp) and a.modulus == b.modulus


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_field_axioms(pk, a, b, c):
    F = build_field(*pk)
    a, b, c = a % F.q, b % F.q, c % F.q
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.exp[F.dlog(a)] == a
