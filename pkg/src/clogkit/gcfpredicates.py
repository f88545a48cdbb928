"""Sufficiency predicates for generalized continued fractions.

Two structural properties of a term sequence (c_j) decide the analytic
behaviour of its expansions: a bounded gap ratio c_{j+1} - c_j < M c_j
forces convergence of the infinite fraction, and divisibility of each
c_n by the following gap forces every rational input to terminate.
Both hypotheses quantify over the whole sequence, so a check can only
ever certify a finite prefix — the certificate records exactly how much
was verified and where the first counterexample sits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expand import TermSequence
from .numtypes import DomainError

__all__ = [
    "SeqCertificate",
    "certificate_json_dict",
    "check_bounded_gap_ratio",
    "check_divisible_gaps",
]


@dataclass(frozen=True)
class SeqCertificate:
    """Outcome of checking one predicate over a finite prefix."""

    property_name: str
    m_value: Fraction | None
    checked_prefix: int
    holds: bool
    first_violation_index: int | None
    n_violations: int


def check_bounded_gap_ratio(seq: TermSequence, M: Fraction | int, prefix: int) -> SeqCertificate:
    """Check the strict gap bound c_{j+1} - c_j < M * c_j for j < prefix.

    The inequality is taken strictly, as the convergence statement
    requires.  Note the boundary case: the naturals with M = 1 give
    equality at j = 0 (gap 1 against c_0 = 1), so that famous sequence
    fails the strict check at its very first index even though simple
    continued fractions converge; the certificate reports the index and
    leaves the interpretation to the caller.
    """
    M = Fraction(M)
    if M <= 0:
        msg = f"M must be positive, got {M}"
        raise DomainError(msg)
    if prefix < 1:
        msg = f"prefix must be >= 1, got {prefix}"
        raise DomainError(msg)
    first: int | None = None
    bad = 0
    for j in range(prefix):
        if not seq.gap(j) < M * seq[j]:
            bad += 1
            if first is None:
                first = j
    return SeqCertificate(
        property_name="BoundedGapRatio",
        m_value=M,
        checked_prefix=prefix,
        holds=bad == 0,
        first_violation_index=first,
        n_violations=bad,
    )


def check_divisible_gaps(seq: TermSequence, prefix: int) -> SeqCertificate:
    """Check (c_{n+1} - c_n) | c_n for 1 <= n < prefix.

    The divisibility hypothesis starts at n = 1; the gap after c_0 = 1 is
    unconstrained.  A prefix of 1 therefore certifies vacuously.
    """
    if prefix < 1:
        msg = f"prefix must be >= 1, got {prefix}"
        raise DomainError(msg)
    first: int | None = None
    bad = 0
    for n in range(1, prefix):
        if seq[n] % seq.gap(n) != 0:
            bad += 1
            if first is None:
                first = n
    return SeqCertificate(
        property_name="DivisibleGaps",
        m_value=None,
        checked_prefix=prefix,
        holds=bad == 0,
        first_violation_index=first,
        n_violations=bad,
    )


def certificate_json_dict(cert: SeqCertificate) -> dict:
    """The five-field JSON shape: property, M, prefix, holds, first_violation_index."""
    return {
        "property": cert.property_name,
        "M": None if cert.m_value is None else str(cert.m_value),
        "prefix": cert.checked_prefix,
        "holds": cert.holds,
        "first_violation_index": cert.first_violation_index,
    }
