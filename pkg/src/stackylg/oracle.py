"""Exhaustive congruence oracles for diagonal ternary forms.

These decide local solvability by brute force over residues, with no use
of Hilbert symbols, so they can cross-check the symbol-based fast path.

A form c1*x^2 + c2*y^2 + c3*z^2 whose coefficients have valuation 0 or 1 at
an odd prime l is isotropic over Q_l iff it has a zero mod l^3 with some
coordinate a unit; at l = 2 the modulus 2^8 is used.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arithmetic import Place, Rational, as_place, integral_squareclass_rep
from .errors import DomainError

ODD_EXPONENT = 3
TWO_EXPONENT = 8


def default_modulus(ell: int) -> int:
    return 2**TWO_EXPONENT if ell == 2 else ell**ODD_EXPONENT


def local_integer_rep(x: Rational, ell: int, modulus: int) -> int:
    """Residue mod ``modulus`` of ell^(v mod 2) * (unit part of x).

    Even powers of ell are cleared, so the result has valuation 0 or 1.
    """
    n = integral_squareclass_rep(x)
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return (ell ** (v % 2) * n) % modulus


@lru_cache(maxsize=4096)
def _value_sets(c: int, ell: int, modulus: int) -> tuple[np.ndarray, np.ndarray]:
    """Indicator arrays of {c x^2 mod M : x any} and {c x^2 : x a unit}."""
    x = np.arange(modulus, dtype=np.int64)
    vals = (x * x % modulus) * (c % modulus) % modulus
    all_ind = np.zeros(modulus, dtype=np.float64)
    all_ind[vals] = 1.0
    unit_ind = np.zeros(modulus, dtype=np.float64)
    unit_ind[vals[x % ell != 0]] = 1.0
    all_ind.flags.writeable = False
    unit_ind.flags.writeable = False
    return all_ind, unit_ind


def _sumset(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Indicator of {s + t mod M} via circular convolution."""
    m = len(u)
    conv = np.fft.irfft(np.fft.rfft(u) * np.fft.rfft(v), n=m)
    return conv > 0.5


@lru_cache(maxsize=4096)
def _pair_sumsets(c1: int, c2: int, ell: int, modulus: int):
    a1, u1 = _value_sets(c1, ell, modulus)
    a2, u2 = _value_sets(c2, ell, modulus)
    return _sumset(u1, a2), _sumset(a1, u2), _sumset(a1, a2)


def isotropic_mod(c1: int, c2: int, c3: int, ell: int, modulus: int) -> bool:
    """Does c1 x^2 + c2 y^2 + c3 z^2 = 0 mod M have a zero with a unit coordinate?"""
    c1, c2, c3 = c1 % modulus, c2 % modulus, c3 % modulus
    x_unit, y_unit, xy_any = _pair_sumsets(c1, c2, ell, modulus)
    a3, u3 = _value_sets(c3, ell, modulus)
    # x^2 term + y^2 term = -(c3 z^2)
    neg_all = np.zeros(modulus, dtype=bool)
    neg_unit = np.zeros(modulus, dtype=bool)
    idx = np.nonzero(a3)[0]
    neg_all[(-idx) % modulus] = True
    idx = np.nonzero(u3)[0]
    neg_unit[(-idx) % modulus] = True
    return bool(
        np.any(x_unit & neg_all) or np.any(y_unit & neg_all) or np.any(xy_any & neg_unit)
    )


def ternary_isotropic(c1: Rational, c2: Rational, c3: Rational, v) -> bool:
    """Isotropy of the diagonal ternary form over Q_v, by exhaustive search.

    At the real place this is sign analysis.
    """
    v = as_place(v)
    if c1 == 0 or c2 == 0 or c3 == 0:
        raise DomainError("degenerate ternary form")
    if v.is_real:
        signs = {Fraction(c) > 0 for c in (c1, c2, c3)}
        return len(signs) == 2
    ell = v.prime
    m = default_modulus(ell)
    reps = [local_integer_rep(c, ell, m) for c in (c1, c2, c3)]
    return isotropic_mod(*reps, ell, m)


def oracle_hilbert_symbol(a: Rational, b: Rational, v) -> int:
    """(a, b)_v decided by searching for zeros of a x^2 + b y^2 - z^2."""
    return 1 if ternary_isotropic(a, b, -1, v) else -1


def oracle_represents(alpha: Rational, beta: Rational, t: Rational, v: Place) -> bool:
    """Does alpha x^2 + beta y^2 = t z^2 have a solution over Q_v with z != 0?

    If the binary part is isotropic it represents every class; otherwise any
    nontrivial zero of the ternary form has z != 0. Either way this is
    isotropy of <alpha, beta, -t>.
    """
    return ternary_isotropic(alpha, beta, -t, v)
