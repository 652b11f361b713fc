"""Exact integer and residue-symbol arithmetic.

Everything here works on Python ints and :class:`fractions.Fraction`;
no floating point is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import DomainError, InvalidModulusError, RangeError

Rational = Union[int, Fraction]

_MAX_PRIME_INPUT = 1 << 64
# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if not 2 <= n < _MAX_PRIME_INPUT:
        raise RangeError(f"is_prime expects 2 <= n < 2**64, got {n}")
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_safe(n: int) -> bool:
    """Like :func:`is_prime` but returns False instead of raising below 2."""
    return n >= 2 and is_prime(n)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: the real place (``prime is None``) or a finite prime."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not is_prime_safe(self.prime):
            raise DomainError(f"{self.prime} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def __str__(self):
        return "real" if self.prime is None else str(self.prime)


REAL = Place.real()


def as_place(v) -> Place:
    """Coerce ``"real"``, ``"inf"``, an int prime or a Place into a Place."""
    if isinstance(v, Place):
        return v
    if v in ("real", "inf", "oo", "R"):
        return REAL
    return Place(int(v))


def legendre(a: int, p: int) -> int:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidModulusError(f"legendre symbol needs an odd prime modulus, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise InvalidModulusError(f"jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Rational, p: int) -> int:
    x = _as_fraction(x)
    if x == 0:
        raise DomainError("valuation of 0 is undefined")
    if p < 2:
        raise DomainError(f"valuation needs a prime, got {p}")
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def integral_squareclass_rep(x: Rational) -> int:
    """An integer in the same squareclass as x (over Q, hence everywhere)."""
    x = _as_fraction(x)
    if x == 0:
        raise DomainError("zero has no squareclass")
    return x.numerator * x.denominator


def unit_part(n: int, p: int) -> tuple[int, int]:
    """Split a nonzero integer as (v, u) with n = p**v * u and p not dividing u."""
    if n == 0:
        raise DomainError("zero has no unit part")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a: Rational, b: Rational, v) -> int:
    v = as_place(v)
    if a == 0 or b == 0:
        raise DomainError("hilbert symbol is undefined for zero arguments")
    a = integral_squareclass_rep(a)
    b = integral_squareclass_rep(b)
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    alpha, u = unit_part(a, p)
    beta, w = unit_part(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(w, p)
    return sign


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of |n|; fine for the sizes used here."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(x: Rational) -> int:
    """The signed squarefree integer in the global squareclass of x."""
    n = integral_squareclass_rep(x)
    s = -1 if n < 0 else 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return s


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for u in range(2, p):
        if legendre(u, p) == -1:
            return u
    raise InvalidModulusError(f"no nonresidue mod {p}")
