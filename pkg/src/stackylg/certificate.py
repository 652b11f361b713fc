"""Certificate data model and its JSON serialization.

The document layout is fixed (key order and formatting), so producing the
same certificate twice gives byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import CertificateParseError
from .forms import BinaryQuadraticForm
from .hypotheses import HypothesisCheck, PrimeTriple

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LocalEntry:
    """One place of the local report.

    ``method`` is one of ``positive_definite`` (real place), ``hensel`` (a
    point of z^2 = f mod ``modulus``), ``unit_value`` (witness (x, y, 1) on
    t z^2 = f with t = f(x, y) a unit mod ``modulus``) or ``good_reduction``
    (the symbolic entry covering every prime above the explicit bound).
    """

    place: str
    method: str
    t: int
    witness: Optional[tuple[int, ...]] = None
    modulus: Optional[int] = None


@dataclass(frozen=True)
class LocalReport:
    bound: int
    entries: tuple[LocalEntry, ...]

    def entry(self, place: str) -> LocalEntry:
        for e in self.entries:
            if e.place == place:
                return e
        raise KeyError(place)

    def places(self) -> list[str]:
        return [e.place for e in self.entries]


@dataclass(frozen=True)
class ObstructionRow:
    exponents: tuple[int, int, int, int, int]
    t: int
    square_at: tuple[str, ...]
    fails_at: tuple[str, ...]


@dataclass(frozen=True)
class ObstructionTable:
    places: tuple[str, ...]
    rows: tuple[ObstructionRow, ...]

    def row(self, t: int) -> ObstructionRow:
        for r in self.rows:
            if r.t == t:
                return r
        raise KeyError(t)


@dataclass(frozen=True)
class GenusReport:
    signature: str
    chi: Fraction
    genus: Fraction
    quotient_chi: Fraction


@dataclass(frozen=True)
class SanityReport:
    height_bound: int
    scanned: int
    solutions: int


@dataclass(frozen=True)
class Certificate:
    triple: PrimeTriple
    form: BinaryQuadraticForm
    genus: GenusReport
    local: Optional[LocalReport]
    obstruction: Optional[ObstructionTable]
    verdict: bool
    mode: str
    hypotheses: tuple[HypothesisCheck, ...] = ()
    sanity: Optional[SanityReport] = None
    exclude_two_adic: bool = False
    toolchain_version: str = __version__

    @property
    def filename(self) -> str:
        t, f = self.triple, self.form
        return f"{t.p}_{t.q}_{t.r}_{f.a}_{f.b}_{f.c}.cert.json"

    def to_dict(self) -> dict:
        g = self.genus
        doc = {
            "schema_version": SCHEMA_VERSION,
            "triple": {"p": self.triple.p, "q": self.triple.q, "r": self.triple.r},
            "form": [self.form.a, self.form.b, self.form.c],
            "genus": {
                "chi_num": g.chi.numerator,
                "chi_den": g.chi.denominator,
                "g_num": g.genus.numerator,
                "g_den": g.genus.denominator,
                "signature": g.signature,
                "quotient_chi": str(g.quotient_chi),
            },
            "local": None,
            "obstruction": None,
            "verdict": self.verdict,
            "mode": self.mode,
            "hypotheses": [
                {"name": h.name, "passed": h.passed, "detail": h.detail} for h in self.hypotheses
            ],
            "sanity": None,
            "config": {"exclude_two_adic": self.exclude_two_adic},
            "toolchain": {"name": "stackylg", "version": self.toolchain_version},
        }
        if self.local is not None:
            local = {"bound": self.local.bound}
            for e in self.local.entries:
                local[e.place] = {
                    "method": e.method,
                    "t": e.t,
                    "witness": list(e.witness) if e.witness is not None else None,
                    "modulus": e.modulus,
                }
            doc["local"] = local
        if self.obstruction is not None:
            doc["obstruction"] = [
                {
                    "t_exponents": list(r.exponents),
                    "t": r.t,
                    "square_at": list(r.square_at),
                    "fails_at": list(r.fails_at),
                }
                for r in self.obstruction.rows
            ]
            doc["config"]["places"] = list(self.obstruction.places)
        if self.sanity is not None:
            s = self.sanity
            doc["sanity"] = {
                "height_bound": s.height_bound,
                "scanned": s.scanned,
                "solutions": s.solutions,
            }
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=True) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "Certificate":
        try:
            return _from_dict(doc)
        except CertificateParseError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CertificateParseError(f"malformed certificate: {exc!r}") from exc

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateParseError(f"not JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise CertificateParseError("certificate must be a JSON object")
        return cls.from_dict(doc)


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise CertificateParseError(f"expected integer, got {x!r}")
    return x


def _from_dict(doc: dict) -> Certificate:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise CertificateParseError(f"unsupported schema_version {doc.get('schema_version')!r}")
    tr = doc["triple"]
    triple = PrimeTriple(_int(tr["p"]), _int(tr["q"]), _int(tr["r"]))
    a, b, c = (_int(x) for x in doc["form"])
    form = BinaryQuadraticForm(a, b, c)
    g = doc["genus"]
    genus = GenusReport(
        signature=str(g["signature"]),
        chi=Fraction(_int(g["chi_num"]), _int(g["chi_den"])),
        genus=Fraction(_int(g["g_num"]), _int(g["g_den"])),
        quotient_chi=Fraction(g["quotient_chi"]),
    )
    local = None
    if doc["local"] is not None:
        loc = dict(doc["local"])
        bound = _int(loc.pop("bound"))
        entries = []
        for place, e in loc.items():
            w = e["witness"]
            entries.append(
                LocalEntry(
                    place=str(place),
                    method=str(e["method"]),
                    t=_int(e["t"]),
                    witness=tuple(_int(x) for x in w) if w is not None else None,
                    modulus=_int(e["modulus"]) if e["modulus"] is not None else None,
                )
            )
        local = LocalReport(bound, tuple(entries))
    config = doc.get("config") or {}
    obstruction = None
    if doc["obstruction"] is not None:
        rows = tuple(
            ObstructionRow(
                exponents=tuple(_int(x) for x in r["t_exponents"]),
                t=_int(r["t"]),
                square_at=tuple(str(x) for x in r["square_at"]),
                fails_at=tuple(str(x) for x in r["fails_at"]),
            )
            for r in doc["obstruction"]
        )
        places = tuple(str(x) for x in config.get("places", ()))
        obstruction = ObstructionTable(places, rows)
    sanity = None
    if doc.get("sanity") is not None:
        s = doc["sanity"]
        sanity = SanityReport(_int(s["height_bound"]), _int(s["scanned"]), _int(s["solutions"]))
    verdict = doc["verdict"]
    if not isinstance(verdict, bool):
        raise CertificateParseError("verdict must be a boolean")
    hyps = tuple(
        HypothesisCheck(str(h["name"]), bool(h["passed"]), str(h.get("detail", "")))
        for h in doc.get("hypotheses", [])
    )
    return Certificate(
        triple=triple,
        form=form,
        genus=genus,
        local=local,
        obstruction=obstruction,
        verdict=verdict,
        mode=str(doc["mode"]),
        hypotheses=hyps,
        sanity=sanity,
        exclude_two_adic=bool(config.get("exclude_two_adic", False)),
        toolchain_version=str(doc.get("toolchain", {}).get("version", "")),
    )
