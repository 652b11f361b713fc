"""Search for new admissible (p, q, r, f) and certify them."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Optional

from .arithmetic import jacobi, legendre, primes_up_to
from .errors import CounterexampleRefuted
from .forms import BinaryQuadraticForm, iter_reduced_forms
from .hypotheses import PrimeTriple, check_hypotheses
from .verifier import CertifyConfig, certify

DEFAULT_PER_TRIPLE = 4


def _square_mod(a: int, p: int) -> bool:
    # jacobi prefilter, legendre confirmation
    return jacobi(a, p) == 1 and legendre(a, p) == 1


def find_prime_triples(bound: int) -> list[PrimeTriple]:
    """Ordered triples of distinct primes = 7 mod 8, each <= bound, with
    p a square mod q and mod r and q a square mod r."""
    primes = [p for p in primes_up_to(bound) if p % 8 == 7]
    out = []
    for p, q, r in itertools.permutations(primes, 3):
        if _square_mod(p, q) and _square_mod(p, r) and _square_mod(q, r):
            out.append(PrimeTriple(p, q, r))
    out.sort()
    return out


def is_admissible_form(triple: PrimeTriple, f: BinaryQuadraticForm) -> bool:
    p, q, r = triple.primes
    return (
        f.discriminant == -triple.product
        and legendre(f.a, q) == 1
        and legendre(f.a, p) == -1
        and legendre(f.a, r) == -1
    )


def find_admissible_forms(triple: PrimeTriple, limit: int) -> list[BinaryQuadraticForm]:
    if limit <= 0:
        return []
    out = []
    for f in iter_reduced_forms(-triple.product):
        if is_admissible_form(triple, f):
            out.append(f)
            if len(out) >= limit:
                break
    return out


def _certify_triple(args):
    triple, per_triple, config = args
    certs = []
    for f in find_admissible_forms(triple, per_triple):
        cert = certify(triple, f, config)
        if not cert.verdict:
            failed = [c.name for c in check_hypotheses(triple, f).failures()]
            raise CounterexampleRefuted(
                f"certify rejected admissible input {triple}, ({f}): {failed or 'verdict false'}"
            )
        certs.append(cert)
    return certs


def discover(
    bound: int,
    per_triple: int = DEFAULT_PER_TRIPLE,
    config: Optional[CertifyConfig] = None,
    workers: int = 1,
) -> Iterator:
    """Yield verdict-true certificates in (triple, form) order.

    ``workers > 1`` certifies triples in worker processes; output order and
    content do not depend on it.
    """
    config = config or CertifyConfig()
    jobs = [(t, per_triple, config) for t in find_prime_triples(bound)]
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            yield from _certify_triple(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for certs in pool.map(_certify_triple, jobs):
            yield from certs
