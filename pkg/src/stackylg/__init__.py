"""Certificates for failures of the local-global principle on genus-1/2 stacky curves."""

__version__ = "0.1.0"

from .arithmetic import Place, hilbert_symbol, is_prime, jacobi, legendre, valuation
from .forms import BinaryQuadraticForm, DiagonalForm
from .hypotheses import PrimeTriple, check_hypotheses
from .verifier import CertifyConfig, certify, recheck, recheck_problems

__all__ = [
    "BinaryQuadraticForm",
    "CertifyConfig",
    "DiagonalForm",
    "Place",
    "PrimeTriple",
    "certify",
    "check_hypotheses",
    "hilbert_symbol",
    "is_prime",
    "jacobi",
    "legendre",
    "recheck",
    "recheck_problems",
    "valuation",
]
