"""Exact arithmetic in the prime field F_p.

Residues are canonical integers in [0, p).  The modulus is restricted to odd
primes with 3 <= p < 2**31 so that any product of two residues fits a 64-bit
intermediate without overflow; no big-integer machinery is needed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import (
    CompositeModulusError,
    DivisionByZeroError,
    ModulusMismatchError,
    OutOfRangeError,
)

MIN_MODULUS = 3
MAX_MODULUS = 2**31  # exclusive


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (fine below 2**31)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    r = isqrt(n)
    while f <= r:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A verified odd prime characteristic p with 3 <= p < 2**31."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < MIN_MODULUS or self.p >= MAX_MODULUS:
            raise OutOfRangeError(f"modulus must be an integer in [{MIN_MODULUS}, 2^31), got {self.p}")
        if not is_prime(self.p):
            raise CompositeModulusError(f"{self.p} is not prime")

    def scalar(self, value: int) -> "Scalar":
        return Scalar(value % self.p, self)

    def __repr__(self):
        return f"PrimeModulus({self.p})"


def make_modulus(n: int) -> PrimeModulus:
    """Validated constructor for :class:`PrimeModulus`."""
    return PrimeModulus(n)


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a modulo p; raises on a == 0 mod p."""
    a %= p
    if a == 0:
        raise DivisionByZeroError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def is_square(a: int, p: int) -> bool:
    """Euler criterion: is a a quadratic residue (or zero) mod p?"""
    a %= p
    if a == 0:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def minus_one_is_square(p: int) -> bool:
    """-1 is a square in F_p exactly when p = 1 (mod 4)."""
    return p % 4 == 1


def sqrt_mod(a: int, p: int) -> int | None:
    """Canonical square root of a mod p, or None if a is a non-residue.

    The canonical root is the numerically smaller of the two roots, so the
    result r always satisfies r <= p - r.  Deterministic: the Tonelli-Shanks
    branch picks the least quadratic non-residue as its auxiliary element.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks for p = 1 (mod 4).
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return min(r, p - r)


@dataclass(frozen=True)
class Scalar:
    """A residue in F_p with exact arithmetic and operator overloads."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.p)

    @property
    def p(self) -> int:
        return self.modulus.p

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.modulus.p != self.p:
                raise ModulusMismatchError(f"mixed moduli {self.p} and {other.modulus.p}")
            return other
        if isinstance(other, int):
            return Scalar(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return Scalar((self.value + o.value) % self.p, self.modulus) if o is not NotImplemented else o

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Scalar((self.value - o.value) % self.p, self.modulus) if o is not NotImplemented else o

    def __rsub__(self, other):
        o = self._coerce(other)
        return Scalar((o.value - self.value) % self.p, self.modulus) if o is not NotImplemented else o

    def __mul__(self, other):
        o = self._coerce(other)
        return Scalar(self.value * o.value % self.p, self.modulus) if o is not NotImplemented else o

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value % self.p, self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def inverse(self) -> "Scalar":
        return Scalar(inv_mod(self.value, self.p), self.modulus)

    def is_square(self) -> bool:
        return is_square(self.value, self.p)

    def sqrt(self) -> "Scalar | None":
        r = sqrt_mod(self.value, self.p)
        return None if r is None else Scalar(r, self.modulus)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Scalar({self.value} mod {self.p})"
