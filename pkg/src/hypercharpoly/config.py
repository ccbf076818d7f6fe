"""Tunable limits shared by the library and the CLI."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # max number of coefficients an explicit expansion may produce
    term_budget: int = 10**7
    # max Macaulay matrix dimension the resultant oracle accepts
    oracle_dim: int = 512
    # max translation parameter t accepted by translate_m
    max_translation: int = 64
    # binary precision for numeric rendering of eigenvalues
    precision_bits: int = 200


DEFAULT_LIMITS = Limits()
