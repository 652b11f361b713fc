"""Integral binary quadratic forms ax^2 + bxy + cy^2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arithmetic import Place, Rational, squarefree_part
from .errors import DomainError, InvalidDiscriminantError


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"

    @classmethod
    def parse(cls, text: str) -> "BinaryQuadraticForm":
        """Parse the CLI form ``"a,b,c"``."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated integers, got {text!r}")
        return cls(*(int(s) for s in parts))


@dataclass(frozen=True)
class DiagonalForm:
    """The form alpha*x^2 + beta*y^2, stored by squareclass representatives.

    ``place`` is None for a form over Q, otherwise the completion the
    representatives are canonical for.
    """

    alpha: Rational
    beta: Rational
    place: Optional[Place] = None

    def __post_init__(self):
        if self.alpha == 0 or self.beta == 0:
            raise DomainError("degenerate diagonal form")

    def scaled(self, s: Rational) -> "DiagonalForm":
        return DiagonalForm(self.alpha * s, self.beta * s, self.place)


def discriminant(f: BinaryQuadraticForm) -> int:
    return f.discriminant


def is_positive_definite(f: BinaryQuadraticForm) -> bool:
    return f.a > 0 and f.discriminant < 0


def evaluate(f: BinaryQuadraticForm, x: int, y: int) -> int:
    return f(x, y)


def is_reduced(f: BinaryQuadraticForm) -> bool:
    a, b, c = f.a, f.b, f.c
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def reduce(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Gauss reduction of a positive definite form under SL2(Z)."""
    if not is_positive_definite(f):
        raise DomainError(f"reduce needs a positive definite form, got ({f})")
    a, b, c = f.a, f.b, f.c
    while True:
        if abs(b) > a:
            # translate x -> x + ky to bring b into (-a, a]
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (b == -a or a == c):
        b = -b
    return BinaryQuadraticForm(a, b, c)


def enumerate_reduced_forms(D: int) -> list[BinaryQuadraticForm]:
    """All reduced positive definite forms of discriminant D, sorted by (a, b, c).

    Imprimitive forms are included.
    """
    return list(iter_reduced_forms(D))


def iter_reduced_forms(D: int):
    """Yield reduced forms of discriminant D in (a, b, c) order; a <= sqrt(|D|/3)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{D} is not a negative discriminant")
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            yield BinaryQuadraticForm(a, b, c)


def diagonalize_over_q(f: BinaryQuadraticForm) -> DiagonalForm:
    """Rational diagonalization by completing the square.

    4a*f = (2ax + by)^2 - D y^2, so f ~ [a, -aD] up to squares. The
    entries are returned as signed squarefree integers.
    """
    D = f.discriminant
    if D == 0:
        raise DomainError(f"degenerate form ({f})")
    if f.a == 0:
        raise DomainError(f"leading coefficient is 0 in ({f}); reduce first")
    return DiagonalForm(squarefree_part(f.a), squarefree_part(Fraction(-f.a * D)))
