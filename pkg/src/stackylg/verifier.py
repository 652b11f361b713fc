"""Assemble and recheck certificates for the stacky counterexample.

For an admissible (triple, f), the quotient stack X = [Y / mu_2] of the conic
Y: z^2 = f(x, y) has genus 1/2, points over R and every Z_ell, and no point
over Z[1/(2pqr)]. :func:`certify` produces the evidence for all three
claims; :func:`recheck` re-derives it from the recorded data alone.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .arithmetic import Place, hilbert_symbol, is_prime_safe, primes_up_to
from .certificate import (
    Certificate,
    GenusReport,
    LocalEntry,
    LocalReport,
    ObstructionRow,
    ObstructionTable,
    SanityReport,
)
from .errors import CounterexampleRefuted, DomainError, PreconditionError
from .forms import BinaryQuadraticForm, DiagonalForm, diagonalize_over_q, is_positive_definite
from .hypotheses import PrimeTriple, check_hypotheses
from .local import (
    conic_point_good_prime,
    hensel_criterion,
    represents_squareclass,
    squareclass_of,
    unit_value_witness,
)
from .stacky import bare_quotient_signature, chi, genus, parse_signature

log = logging.getLogger(__name__)

MODES = ("fast", "paranoid")
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CertifyConfig:
    good_prime_bound: int = 100
    height_bound: int = 200
    mode: str = "fast"
    # count only failures at real, p, q, r toward the verdict
    exclude_two_adic: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class GlobalSquareClass:
    """(-1)^e0 * 2^e1 * p^e2 * q^e3 * r^e4, a class of Z[1/(2pqr)]^x mod squares."""

    exponents: tuple[int, int, int, int, int]

    def representative(self, triple: PrimeTriple) -> int:
        e = self.exponents
        return (-1) ** e[0] * 2 ** e[1] * triple.p ** e[2] * triple.q ** e[3] * triple.r ** e[4]


def global_squareclasses() -> list[GlobalSquareClass]:
    return [GlobalSquareClass(e) for e in itertools.product((0, 1), repeat=5)]


def table_places(triple: PrimeTriple) -> tuple[str, ...]:
    return ("real", "2", str(triple.p), str(triple.q), str(triple.r))


def required_places(triple: PrimeTriple, exclude_two_adic: bool = False) -> set[str]:
    if exclude_two_adic:
        return {"real", str(triple.p), str(triple.q), str(triple.r)}
    return set(table_places(triple))


def _require_hypotheses(triple, f):
    report = check_hypotheses(triple, f)
    if not report.passed:
        raise PreconditionError(report.failures()[0].name)


# -- (a) genus ----------------------------------------------------------------


def genus_report(f: BinaryQuadraticForm) -> GenusReport:
    """Signature of [Y / mu_2]: coarse space P^1, stabilizer mu_2 at the z = 0 points.

    The points with z = 0 are the roots of f(x, y) on P^1, two of them when
    disc(f) != 0. The conic Y has chi = 2, and chi(X) must equal chi(Y) / 2.
    """
    n_fixed = 2 if f.discriminant != 0 else 1
    sig = bare_quotient_signature(n_fixed, order=2)
    return GenusReport(str(sig), chi(sig), genus(sig), Fraction(2, 2))


# -- (b) local points -----------------------------------------------------------


def verify_local(triple: PrimeTriple, f: BinaryQuadraticForm, good_prime_bound: int = 100) -> LocalReport:
    _require_hypotheses(triple, f)
    entries = [LocalEntry("real", "positive_definite", 1)]
    bad = set(triple.primes)
    for ell in sorted(set(primes_up_to(max(good_prime_bound, 2))) | bad):
        if ell in bad:
            w = unit_value_witness(f, ell)
            entries.append(LocalEntry(str(ell), "unit_value", w.t, (w.x, w.y, 1), ell))
        else:
            pt = conic_point_good_prime(f, ell)
            entries.append(LocalEntry(str(ell), "hensel", 1, pt.coords, pt.modulus))
    entries.append(LocalEntry("rest", "good_reduction", 1))
    return LocalReport(good_prime_bound, tuple(entries))


# -- (c) global obstruction -------------------------------------------------------


def obstruction_row(
    g: DiagonalForm, triple: PrimeTriple, cls: GlobalSquareClass, method: str = "hilbert"
) -> ObstructionRow:
    """Where does t*f take square values, i.e. where does f represent the class of t?"""
    t = cls.representative(triple)
    square_at, fails_at = [], []
    for name in table_places(triple):
        v = Place(None) if name == "real" else Place(int(name))
        ok = represents_squareclass(g, squareclass_of(t, v), v, method)
        (square_at if ok else fails_at).append(name)
    return ObstructionRow(cls.exponents, t, tuple(square_at), tuple(fails_at))


def verify_global_obstruction(
    triple: PrimeTriple,
    f: BinaryQuadraticForm,
    mode: str = "fast",
    exclude_two_adic: bool = False,
) -> ObstructionTable:
    _require_hypotheses(triple, f)
    method = "hilbert" if mode == "fast" else "oracle"
    g = diagonalize_over_q(f)
    need = required_places(triple, exclude_two_adic)
    rows = []
    for cls in global_squareclasses():
        row = obstruction_row(g, triple, cls, method)
        if not need & set(row.fails_at):
            raise CounterexampleRefuted(
                f"t = {row.t} * f takes square values at every place", evidence=row
            )
        rows.append(row)
    return ObstructionTable(table_places(triple), tuple(rows))


# -- brute force corroboration ------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    scanned: int
    solutions: tuple[tuple[int, int, int, int], ...]


def _twist_representatives(triple: Optional[PrimeTriple]) -> list[int]:
    if triple is None:
        return [1, -1]
    return [c.representative(triple) for c in global_squareclasses()]


def brute_force_search(
    triple: Optional[PrimeTriple], f: BinaryQuadraticForm, height_bound: int
) -> SearchResult:
    """All (x, y, z, t) with |x|, |y|, |z| <= B, z != 0 and t z^2 = f(x, y).

    t runs over the 32 representatives (or +-1 without a triple). The count of
    tuples covered is (2B+1)^2 * 2B * #t.
    """
    B = height_bound
    reps = _twist_representatives(triple)
    scanned = (2 * B + 1) ** 2 * (2 * B) * len(reps)
    if B <= 0:
        return SearchResult(0, ())
    r = np.arange(-B, B + 1, dtype=np.int64)
    X, Y = np.meshgrid(r, r, indexing="ij")
    F = f.a * X * X + f.b * X * Y + f.c * Y * Y
    found = []
    for t in reps:
        mask = (F % t == 0) & (F * np.sign(t) > 0)
        if not mask.any():
            continue
        q = F[mask] // t
        s = np.floor(np.sqrt(q.astype(np.float64))).astype(np.int64)
        for d in (-1, 0, 1):
            hit = ((s + d) ** 2 == q) & (s + d >= 1) & (s + d <= B)
            if hit.any():
                xs, ys = X[mask][hit], Y[mask][hit]
                for x, y, z in zip(xs.tolist(), ys.tolist(), (s + d)[hit].tolist()):
                    found.append((x, y, z, t))
                    found.append((x, y, -z, t))
    found = sorted(set(found))
    return SearchResult(scanned, tuple(found))


def brute_force_sanity(
    triple: Optional[PrimeTriple], f: BinaryQuadraticForm, height_bound: int
) -> SanityReport:
    res = brute_force_search(triple, f, height_bound)
    if res.solutions:
        x, y, z, t = res.solutions[0]
        raise CounterexampleRefuted(
            f"{t}*{z}^2 = f({x},{y}) is a global solution", evidence=res.solutions
        )
    return SanityReport(height_bound, res.scanned, 0)


# -- certify / recheck ------------------------------------------------------------


def certify(
    triple: PrimeTriple, f: BinaryQuadraticForm, config: Optional[CertifyConfig] = None
) -> Certificate:
    """Run every check. Hypothesis failures give verdict False; search failures raise."""
    config = config or CertifyConfig()
    hyps = check_hypotheses(triple, f)
    g = genus_report(f)
    common = dict(
        triple=triple,
        form=f,
        genus=g,
        mode=config.mode,
        hypotheses=hyps.checks,
        exclude_two_adic=config.exclude_two_adic,
    )
    if not hyps.passed:
        log.info("hypotheses fail for %s, %s: %s", triple, f, [c.name for c in hyps.failures()])
        return Certificate(local=None, obstruction=None, verdict=False, **common)
    local = verify_local(triple, f, config.good_prime_bound)
    table = verify_global_obstruction(triple, f, config.mode, config.exclude_two_adic)
    sanity = brute_force_sanity(triple, f, config.height_bound)
    verdict = g.genus == HALF and g.chi == g.quotient_chi
    return Certificate(local=local, obstruction=table, verdict=verdict, sanity=sanity, **common)


def _check_local(cert: Certificate) -> list[str]:
    problems = []
    f, triple, rep = cert.form, cert.triple, cert.local
    bad = set(triple.primes)
    seen = rep.places()
    expected = ["real"] + [str(l) for l in sorted(set(primes_up_to(max(rep.bound, 2))) | bad)] + ["rest"]
    if seen != expected:
        missing = sorted(set(expected) - set(seen), key=str)
        extra = sorted(set(seen) - set(expected), key=str)
        problems.append(f"local: place list mismatch (missing {missing}, extra {extra})")
    for e in rep.entries:
        where = f"local[{e.place}]"
        if e.place == "real":
            if e.method != "positive_definite" or e.t != 1 or not is_positive_definite(f):
                problems.append(f"{where}: real point not justified")
            continue
        if e.place == "rest":
            # every prime dividing disc(f) is p, q or r, so each ell > bound is a
            # good odd prime: smooth conic over F_ell, a point by Chevalley-Warning, Hensel
            ok = (
                e.method == "good_reduction"
                and e.t == 1
                and f.discriminant == -triple.product
                and all(is_prime_safe(l) for l in triple.primes)
            )
            if not ok:
                problems.append(f"{where}: good-reduction justification does not hold")
            continue
        if not e.place.isdigit():
            problems.append(f"{where}: unknown place")
            continue
        ell = int(e.place)
        if e.witness is None or len(e.witness) != 3 or e.modulus is None:
            problems.append(f"{where}: missing witness")
            continue
        x, y, z = e.witness
        if ell in bad:
            ok = (
                e.method == "unit_value"
                and z == 1
                and e.modulus == ell
                and e.t == f(x, y)
                and e.t % ell != 0
            )
        else:
            try:
                ok = e.method == "hensel" and e.t == 1 and hensel_criterion(f, (x, y, z), ell, e.modulus)
            except DomainError:
                ok = False
        if not ok:
            problems.append(f"{where}: witness {e.witness} mod {e.modulus} does not verify")
    return problems


def _check_obstruction(cert: Certificate) -> list[str]:
    problems = []
    triple, table = cert.triple, cert.obstruction
    places = table_places(triple)
    if tuple(table.places) != places:
        problems.append(f"obstruction: places {table.places} != {places}")
    classes = global_squareclasses()
    if sorted(r.exponents for r in table.rows) != sorted(c.exponents for c in classes):
        problems.append("obstruction: rows are not the 32 exponent vectors")
    g = diagonalize_over_q(cert.form)
    need = required_places(triple, cert.exclude_two_adic)
    for row in table.rows:
        where = f"obstruction[t={row.t}]"
        if len(row.exponents) != 5 or any(e not in (0, 1) for e in row.exponents):
            problems.append(f"{where}: bad exponent vector {row.exponents}")
            continue
        cls = GlobalSquareClass(tuple(row.exponents))
        if cls.representative(triple) != row.t:
            problems.append(f"{where}: t does not match exponents {row.exponents}")
        square_at = {n for n in places if hilbert_symbol(g.alpha * row.t, g.beta * row.t, n) == 1}
        if set(row.square_at) != square_at or set(row.fails_at) != set(places) - square_at:
            problems.append(f"{where}: recorded square/fail places do not match symbols")
        if not need & set(row.fails_at):
            problems.append(f"{where}: no failing place")
    return problems


def recheck_problems(cert: Certificate) -> list[str]:
    """Everything wrong with ``cert``; empty iff it proves the theorem for its inputs."""
    problems = []
    if cert.mode not in MODES:
        problems.append(f"unknown mode {cert.mode!r}")
    hyps = check_hypotheses(cert.triple, cert.form)
    for h in hyps.failures():
        problems.append(f"hypothesis: {h.name}")
    try:
        sig = parse_signature(cert.genus.signature)
    except ValueError as exc:
        problems.append(f"genus: bad signature ({exc})")
    else:
        expected = genus_report(cert.form)
        if (
            str(sig) != expected.signature
            or chi(sig) != cert.genus.chi
            or genus(sig) != cert.genus.genus
            or cert.genus.quotient_chi != expected.quotient_chi
            or cert.genus.chi != cert.genus.quotient_chi
            or cert.genus.genus != HALF
        ):
            problems.append("genus: recorded chi/genus do not match the signature")
    if cert.local is None:
        problems.append("local: report missing")
    else:
        problems.extend(_check_local(cert))
    if cert.obstruction is None:
        problems.append("obstruction: table missing")
    else:
        problems.extend(_check_obstruction(cert))
    if cert.sanity is None or cert.sanity.solutions != 0:
        problems.append("sanity: brute-force report missing or records solutions")
    if not cert.verdict:
        problems.append("verdict is false")
    return problems


def recheck(cert: Certificate) -> bool:
    return not recheck_problems(cert)
