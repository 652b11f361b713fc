"""Prime triples and the arithmetic hypotheses of the counterexample construction."""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import is_prime_safe, legendre
from .forms import BinaryQuadraticForm, is_positive_definite


@dataclass(frozen=True, order=True)
class PrimeTriple:
    p: int
    q: int
    r: int

    @property
    def primes(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def product(self) -> int:
        return self.p * self.q * self.r

    def __str__(self):
        return f"({self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class HypothesisReport:
    checks: tuple[HypothesisCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[HypothesisCheck]:
        return [c for c in self.checks if not c.passed]

    def __iter__(self):
        return iter(self.checks)


def _symbol_check(name, a, m, want, primes_ok):
    if not primes_ok:
        return HypothesisCheck(name, False, f"modulus {m} not an odd prime")
    got = legendre(a, m)
    return HypothesisCheck(name, got == want, f"({a}/{m}) = {got}")


def triple_checks(triple: PrimeTriple) -> list[HypothesisCheck]:
    p, q, r = triple.primes
    checks = []
    prime_ok = {}
    for name, n in (("p", p), ("q", q), ("r", r)):
        ok = is_prime_safe(n)
        prime_ok[name] = ok and n > 2
        checks.append(HypothesisCheck(f"{name} prime", ok, str(n)))
    checks.append(HypothesisCheck("p,q,r distinct", len({p, q, r}) == 3))
    for name, n in (("p", p), ("q", q), ("r", r)):
        checks.append(HypothesisCheck(f"{name} = 7 mod 8", n % 8 == 7, f"{n} mod 8 = {n % 8}"))
    checks.append(_symbol_check("p square mod q", p, q, 1, prime_ok["q"]))
    checks.append(_symbol_check("p square mod r", p, r, 1, prime_ok["r"]))
    checks.append(_symbol_check("q square mod r", q, r, 1, prime_ok["r"]))
    return checks


def form_checks(triple: PrimeTriple, f: BinaryQuadraticForm) -> list[HypothesisCheck]:
    p, q, r = triple.primes
    odd_prime = {n: is_prime_safe(n) and n > 2 for n in (p, q, r)}
    D = f.discriminant
    return [
        HypothesisCheck("disc(f) = -pqr", D == -triple.product, f"{D} vs {-triple.product}"),
        HypothesisCheck("f positive definite", is_positive_definite(f)),
        _symbol_check("a nonzero square mod q", f.a, q, 1, odd_prime[q]),
        _symbol_check("a nonsquare mod p", f.a, p, -1, odd_prime[p]),
        _symbol_check("a nonsquare mod r", f.a, r, -1, odd_prime[r]),
    ]


def check_hypotheses(triple: PrimeTriple, f: BinaryQuadraticForm) -> HypothesisReport:
    """Evaluate every hypothesis individually; failures are entries, not exceptions."""
    return HypothesisReport(tuple(triple_checks(triple) + form_checks(triple, f)))
