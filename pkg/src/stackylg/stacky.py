"""Euler characteristic and genus of stacky curves from combinatorial signatures.

A signature records the genus of the smooth compactified coarse space, the
number of punctures, and for each point with nontrivial stabilizer the
orders |G_0| >= |G_1| >= ... of its ramification filtration (lower
numbering, trailing 1s dropped).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError


@dataclass(frozen=True)
class RamificationDatum:
    group_order: int
    filtration: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.group_order
        if n < 1:
            raise DomainError(f"group order must be positive, got {n}")
        filt = tuple(self.filtration) or (n,)
        while len(filt) > 1 and filt[-1] == 1:
            filt = filt[:-1]
        if filt[0] != n:
            raise DomainError(f"|G_0| must equal |G| = {n}, got {filt[0]}")
        for g, h in zip(filt, filt[1:]):
            if h > g:
                raise DomainError(f"filtration {filt} is not nonincreasing")
        for g in filt:
            if g < 1 or n % g:
                raise DomainError(f"{g} does not divide {n}")
        if n == 1:
            filt = (1,)
        object.__setattr__(self, "filtration", filt)

    @classmethod
    def tame(cls, order: int) -> "RamificationDatum":
        return cls(order, (order,))

    @property
    def is_tame(self) -> bool:
        return len(self.filtration) == 1

    @property
    def is_trivial(self) -> bool:
        return self.group_order == 1

    def __str__(self):
        n, *rest = self.filtration
        return f"({n}:{','.join(map(str, rest))})" if rest else f"({n})"


@dataclass(frozen=True)
class StackySignature:
    coarse_genus: int
    punctures: int
    points: tuple[RamificationDatum, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.coarse_genus < 0 or self.punctures < 0:
            raise DomainError("coarse genus and puncture count must be nonnegative")
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def stacky_points(self) -> tuple[RamificationDatum, ...]:
        return tuple(d for d in self.points if not d.is_trivial)

    def __str__(self):
        return f"{self.coarse_genus};{self.punctures};[{','.join(map(str, self.points))}]"


_POINT = r"\(\s*\d+\s*(?::\s*\d+(?:\s*,\s*\d+)*\s*)?\)"
_POINT_LIST_RE = re.compile(rf"\[\s*(?:{_POINT}(?:\s*,\s*{_POINT})*)?\s*\]")


def parse_signature(text: str) -> StackySignature:
    """Parse ``"g;Z;[(|G|:|G_1|,...), ...]"``, e.g. ``"0;0;[(2),(2)]"``."""
    parts = text.strip().split(";")
    if len(parts) != 3:
        raise ValueError(f"signature needs three ';'-separated fields: {text!r}")
    g, z, pts = (s.strip() for s in parts)
    if not _POINT_LIST_RE.fullmatch(pts):
        raise ValueError(f"cannot parse point list {pts!r}")
    points = []
    for body in re.findall(r"\(([^)]*)\)", pts):
        order, _, higher = body.partition(":")
        order = int(order)
        rest = [int(s) for s in higher.split(",") if s.strip()]
        points.append(RamificationDatum(order, (order, *rest)))
    return StackySignature(int(g), int(z), tuple(points))


def delta_p(d: RamificationDatum) -> Fraction:
    n = d.group_order
    return sum((Fraction(g - 1, n) for g in d.filtration), Fraction(0))


def coarse_chi(sig: StackySignature) -> int:
    return 2 - 2 * sig.coarse_genus - sig.punctures


def chi(sig: StackySignature) -> Fraction:
    return coarse_chi(sig) - sum((delta_p(d) for d in sig.points), Fraction(0))


def genus(sig: StackySignature) -> Fraction:
    return (2 - chi(sig)) / 2


def bare_quotient_signature(n_fixed: int, order: int = 2, coarse_genus: int = 0) -> StackySignature:
    """Quotient of a curve by a group of ``order`` with ``n_fixed`` tame fixed points."""
    return StackySignature(coarse_genus, 0, tuple(RamificationDatum.tame(order) for _ in range(n_fixed)))


@dataclass(frozen=True)
class LemmaReport:
    genus: Fraction
    applies: bool
    coarse_is_p1: bool
    no_punctures: bool
    at_most_one_point: bool
    tame: bool

    @property
    def satisfied(self) -> bool:
        if not self.applies:
            return True
        return self.coarse_is_p1 and self.no_punctures and self.at_most_one_point and self.tame


def check_genus_lt_half_lemma(sig: StackySignature) -> LemmaReport:
    """Genus < 1/2 should force coarse P^1, no punctures, <= 1 stacky point, tame."""
    g = genus(sig)
    pts = sig.stacky_points
    return LemmaReport(
        genus=g,
        applies=g < Fraction(1, 2),
        coarse_is_p1=sig.coarse_genus == 0,
        no_punctures=sig.punctures == 0,
        at_most_one_point=len(pts) <= 1,
        tame=all(d.is_tame for d in pts),
    )


def filtrations(order: int, max_length: int):
    """Nonincreasing chains of divisors > 1 of ``order`` starting at ``order``."""
    divisors = [d for d in range(2, order + 1) if order % d == 0]
    chains = [(order,)]
    frontier = [(order,)]
    for _ in range(max_length - 1):
        frontier = [c + (d,) for c in frontier for d in divisors if d <= c[-1]]
        chains.extend(frontier)
    return chains


def signature_grid(max_genus=2, max_punctures=2, max_points=3, max_order=6, max_filtration=3):
    data = [
        RamificationDatum(n, filt)
        for n in range(2, max_order + 1)
        for filt in filtrations(n, max_filtration)
    ]
    for g in range(max_genus + 1):
        for z in range(max_punctures + 1):
            for k in range(max_points + 1):
                for pts in itertools.combinations_with_replacement(data, k):
                    yield StackySignature(g, z, pts)


def lemma_grid_violations(**grid) -> tuple[int, list[StackySignature]]:
    """Run the lemma check over the grid; return (signatures checked, violations)."""
    n = 0
    bad = []
    for sig in signature_grid(**grid):
        n += 1
        if not check_genus_lt_half_lemma(sig).satisfied:
            bad.append(sig)
    return n, bad
