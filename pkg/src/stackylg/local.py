"""Squareclasses over Q_v and local representation by binary forms.

Also hosts the witness searches for integral local points on the
twisted conics t*z^2 = f(x, y).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .arithmetic import (
    Place,
    Rational,
    as_place,
    hilbert_symbol,
    integral_squareclass_rep,
    legendre,
    smallest_nonresidue,
    unit_part,
    valuation,
)
from .errors import DomainError, PreconditionError, VerificationFailed, WrongRoutineError
from .forms import BinaryQuadraticForm, DiagonalForm, diagonalize_over_q
from .hypotheses import PrimeTriple, check_hypotheses
from . import oracle

METHODS = ("hilbert", "oracle")


@dataclass(frozen=True, order=True)
class LocalSquareClass:
    """An element of Q_v^x / squares.

    real place: ``unit`` is the sign, ``parity`` is 0.
    odd prime:  ``parity`` = v(x) mod 2, ``unit`` = Legendre symbol of the unit part.
    prime 2:    ``parity`` = v(x) mod 2, ``unit`` = unit part mod 8.
    """

    place: Place
    parity: int
    unit: int

    def __post_init__(self):
        p = self.place.prime
        if p is None:
            ok = self.parity == 0 and self.unit in (1, -1)
        elif p == 2:
            ok = self.parity in (0, 1) and self.unit in (1, 3, 5, 7)
        else:
            ok = self.parity in (0, 1) and self.unit in (1, -1)
        if not ok:
            raise DomainError(f"invalid squareclass data {self.parity, self.unit} at {self.place}")

    def representative(self) -> int:
        p = self.place.prime
        if p is None:
            return self.unit
        if p == 2:
            return 2**self.parity * self.unit
        u = 1 if self.unit == 1 else smallest_nonresidue(p)
        return p**self.parity * u

    @property
    def is_identity(self) -> bool:
        return self.parity == 0 and self.unit == 1

    def __mul__(self, other: "LocalSquareClass") -> "LocalSquareClass":
        if other.place != self.place:
            raise DomainError("squareclasses at different places")
        p = self.place.prime
        parity = (self.parity + other.parity) % 2
        if p == 2:
            return LocalSquareClass(self.place, parity, self.unit * other.unit % 8)
        return LocalSquareClass(self.place, parity, self.unit * other.unit)

    def label(self) -> str:
        """Human-readable name with u the canonical unit nonresidue: 1, u, 7, 7u, ..."""
        p = self.place.prime
        if p is None:
            return "+" if self.unit == 1 else "-"
        if p == 2:
            return str(self.representative())
        head = "" if self.parity == 0 else str(p)
        tail = "" if self.unit == 1 else "u"
        return (head + tail) or "1"

    def __str__(self):
        return f"{self.label()}@{self.place}"


def all_squareclasses(v) -> list[LocalSquareClass]:
    v = as_place(v)
    if v.is_real:
        return [LocalSquareClass(v, 0, 1), LocalSquareClass(v, 0, -1)]
    units = (1, 3, 5, 7) if v.prime == 2 else (1, -1)
    return [LocalSquareClass(v, e, u) for e in (0, 1) for u in units]


def identity_class(v) -> LocalSquareClass:
    return LocalSquareClass(as_place(v), 0, 1)


def squareclass_of(x: Rational, v) -> LocalSquareClass:
    v = as_place(v)
    n = integral_squareclass_rep(x)
    if v.is_real:
        return LocalSquareClass(v, 0, 1 if n > 0 else -1)
    e, u = unit_part(n, v.prime)
    if v.prime == 2:
        return LocalSquareClass(v, e % 2, u % 8)
    return LocalSquareClass(v, e % 2, legendre(u, v.prime))


@dataclass(frozen=True)
class LocalRepSet:
    place: Place
    classes: frozenset

    def labels(self) -> set[str]:
        return {c.label() for c in self.classes}

    def __contains__(self, t):
        return t in self.classes

    def __len__(self):
        return len(self.classes)


def local_diagonal(f: BinaryQuadraticForm, triple: PrimeTriple, v) -> DiagonalForm:
    """Diagonalization of f over Q_v with canonical local representatives."""
    v = as_place(v)
    if not (v.is_real or v.prime == 2 or v.prime in triple.primes):
        raise DomainError(f"place {v} is not one of real, 2, p, q, r")
    for check in check_hypotheses(triple, f):
        if not check.passed:
            raise PreconditionError(check.name)
    g = diagonalize_over_q(f)
    return DiagonalForm(
        squareclass_of(g.alpha, v).representative(),
        squareclass_of(g.beta, v).representative(),
        v,
    )


def diagonal_labels(g: DiagonalForm, v=None) -> tuple[str, str]:
    v = as_place(v if v is not None else g.place)
    return squareclass_of(g.alpha, v).label(), squareclass_of(g.beta, v).label()


def represents_squareclass(
    g: DiagonalForm, t: LocalSquareClass, v=None, method: str = "hilbert"
) -> bool:
    """Whether alpha x^2 + beta y^2 = t z^2 is solvable over Q_v with z != 0.

    ``method="hilbert"`` uses (alpha t, beta t)_v = 1; ``method="oracle"``
    searches residues exhaustively.
    """
    v = as_place(v if v is not None else t.place)
    if t.place != v:
        raise DomainError(f"squareclass {t} is not at place {v}")
    s = t.representative()
    if method == "hilbert":
        return hilbert_symbol(g.alpha * s, g.beta * s, v) == 1
    if method == "oracle":
        return oracle.oracle_represents(g.alpha, g.beta, s, v)
    raise ValueError(f"unknown method {method!r}")


def represented_squareclasses(g: DiagonalForm, v=None, method: str = "hilbert") -> LocalRepSet:
    if v is None and g.place is None:
        raise DomainError("no place given for a form over Q")
    v = as_place(v if v is not None else g.place)
    classes = frozenset(
        t for t in all_squareclasses(v) if represents_squareclass(g, t, v, method)
    )
    return LocalRepSet(v, classes)


# -- witness searches -------------------------------------------------------


def shell_order(size: int, dim: int) -> Iterator[tuple[int, ...]]:
    """Tuples in [0, size)^dim by increasing max-norm, ties broken colexicographically."""
    for n in range(size):
        shell = [t for t in itertools.product(range(n + 1), repeat=dim) if max(t) == n]
        shell.sort(key=lambda t: t[::-1])
        yield from shell


@dataclass(frozen=True)
class ConicPoint:
    """A point of z^2 = f(x, y) modulo ``modulus`` = ell^k."""

    x: int
    y: int
    z: int
    modulus: int

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def conic_partials(f: BinaryQuadraticForm, x: int, y: int, z: int) -> tuple[int, int, int]:
    """Gradient of F = t z^2 - f(x, y) with t = 1."""
    return (-(2 * f.a * x + f.b * y), -(f.b * x + 2 * f.c * y), 2 * z)


def _ell_exponent(modulus: int, ell: int) -> int:
    k = valuation(modulus, ell)
    if ell**k != modulus:
        raise DomainError(f"modulus {modulus} is not a power of {ell}")
    return k


def hensel_criterion(f: BinaryQuadraticForm, point, ell: int, modulus: int, t: int = 1) -> bool:
    """Check that ``point`` lifts to a Z_ell point of t z^2 = f(x, y).

    Requires a primitive zero of F = t z^2 - f modulo ell^k and a coordinate
    whose partial derivative has valuation s with 2s + 1 <= k.
    """
    x, y, z = point
    k = _ell_exponent(modulus, ell)
    if k < 1:
        return False
    if all(c % ell == 0 for c in (x, y, z)):
        return False
    if (t * z * z - f(x, y)) % modulus:
        return False
    grads = (-(2 * f.a * x + f.b * y), -(f.b * x + 2 * f.c * y), 2 * t * z)
    for g in grads:
        if g % modulus == 0:
            continue
        if 2 * valuation(g, ell) + 1 <= k:
            return True
    return False


def _lift_2adic(f: BinaryQuadraticForm, point, var: int, s: int, modulus: int):
    """Adjust coordinate ``var`` within its class mod 2^(s+1) to get a zero mod ``modulus``."""
    step = 2 ** (s + 1)
    pt = list(point)
    base = pt[var] % step
    for j in range(modulus // step):
        pt[var] = base + j * step
        if (pt[2] ** 2 - f(pt[0], pt[1])) % modulus == 0:
            return tuple(pt)
    return None


def conic_point_good_prime(f: BinaryQuadraticForm, ell: int) -> ConicPoint:
    """A point on z^2 = f(x, y) mod ell^k that lifts to Z_ell by Hensel's lemma.

    Odd ell: k = 1 and a nonvanishing partial derivative. ell = 2: k = 8 and
    the strong criterion F = 0 mod 2^(2s+1), s the valuation of a partial.
    """
    if f.discriminant % ell == 0:
        raise WrongRoutineError(f"{ell} divides disc(f); use unit_value_witness")
    if ell != 2:
        for x, y, z in shell_order(ell, 3):
            if hensel_criterion(f, (x, y, z), ell, ell):
                return ConicPoint(x, y, z, ell)
        raise VerificationFailed(Place(ell), f"no smooth point on z^2 = f mod {ell}")
    k = oracle.TWO_EXPONENT
    modulus = 2**k
    for pt in shell_order(modulus, 3):
        x, y, z = pt
        if all(c % 2 == 0 for c in pt):
            continue
        F = z * z - f(x, y)
        for var, g in enumerate(conic_partials(f, x, y, z)):
            if g == 0:
                continue
            s = valuation(g, 2)
            if 2 * s + 1 > k or F % 2 ** (2 * s + 1):
                continue
            lifted = _lift_2adic(f, pt, var, s, modulus)
            if lifted is not None and hensel_criterion(f, lifted, 2, modulus):
                return ConicPoint(*lifted, modulus)
    raise VerificationFailed(Place(2), "no 2-adic point on z^2 = f(x, y)")


@dataclass(frozen=True)
class UnitValueWitness:
    """(x, y) with t = f(x, y) a unit at ell, so (x, y, 1) lies on t z^2 = f(x, y)."""

    x: int
    y: int
    t: int


def unit_value_witness(f: BinaryQuadraticForm, ell: int) -> UnitValueWitness:
    for x, y in shell_order(ell, 2):
        t = f(x, y)
        if t % ell:
            return UnitValueWitness(x, y, t)
    raise VerificationFailed(Place(ell), f"f is identically 0 mod {ell}")


def real_place_has_point(f: BinaryQuadraticForm) -> bool:
    """z^2 = f(x, y) has a real point with z != 0 iff f takes a positive value."""
    return f.a > 0 or f.c > 0 or f.discriminant > 0
