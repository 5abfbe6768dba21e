import pytest
from hypothesis import given, settings, strategies as st

from incidencelab.errors import (
    CompositeModulusError,
    DivisionByZeroError,
    ModulusMismatchError,
    OutOfRangeError,
)
from incidencelab.field import (
    PrimeModulus,
    inv_mod,
    is_square,
    make_modulus,
    minus_one_is_square,
    sqrt_mod,
)

PRIMES = [3, 5, 7, 11, 13, 17, 101, 1009, 65537, 2147483629]


def test_make_modulus_accepts_primes():
    assert make_modulus(7).p == 7
    assert make_modulus(2147483629).p == 2147483629


def test_make_modulus_rejects_composites_and_range():
    with pytest.raises(CompositeModulusError):
        make_modulus(9)
    with pytest.raises(OutOfRangeError):
        make_modulus(2**31)
    with pytest.raises(OutOfRangeError):
        make_modulus(2)
    with pytest.raises(OutOfRangeError):
        make_modulus(-5)


def test_scalar_examples():
    mod7 = make_modulus(7)
    assert (mod7.scalar(3) * mod7.scalar(5)).value == 1
    assert mod7.scalar(2).inverse().value == 4
    with pytest.raises(DivisionByZeroError):
        mod7.scalar(0).inverse()


def test_mixed_moduli_rejected():
    a = make_modulus(7).scalar(1)
    b = make_modulus(11).scalar(1)
    with pytest.raises(ModulusMismatchError):
        a + b


def test_sqrt_examples():
    assert sqrt_mod(4, 7) == 2
    assert sqrt_mod(-1, 5) == 2
    assert sqrt_mod(-1, 7) is None
    assert sqrt_mod(0, 13) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_minus_one_square_iff_one_mod_four(p):
    assert minus_one_is_square(p) == (p % 4 == 1)
    assert (sqrt_mod(-1, p) is not None) == (p % 4 == 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 29, 97, 101])
def test_sqrt_exhaustive_small(p):
    squares = {v * v % p for v in range(p)}
    for a in range(p):
        r = sqrt_mod(a, p)
        assert is_square(a, p) == (a in squares)
        if a in squares:
            assert r is not None and r * r % p == a
            assert r <= p - r  # canonical smaller root
        else:
            assert r is None


@settings(max_examples=200, derandomize=True)
@given(a=st.integers(0, 10**9), b=st.integers(0, 10**9), c=st.integers(0, 10**9),
       pi=st.integers(0, len(PRIMES) - 1))
def test_field_axioms(a, b, c, pi):
    p = PRIMES[pi]
    mod = PrimeModulus(p)
    x, y, z = mod.scalar(a), mod.scalar(b), mod.scalar(c)
    assert ((x + y) - y) == x
    assert (x + y) == (y + x)
    assert (x * (y + z)) == (x * y + x * z)
    assert (-x + x).value == 0
    if x.value != 0:
        assert (x.inverse() * x).value == 1
        assert (y / x) * x == y


@settings(max_examples=100, derandomize=True)
@given(a=st.integers(0, 10**9), pi=st.integers(0, len(PRIMES) - 1))
def test_sqrt_roundtrip_property(a, pi):
    p = PRIMES[pi]
    r = sqrt_mod(a, p)
    if r is not None:
        assert r * r % p == a % p
        assert r <= p - r


def test_inv_mod_large_prime():
    p = 2147483629
    for a in (2, 3, 12345, p - 1):
        assert inv_mod(a, p) * a % p == 1
