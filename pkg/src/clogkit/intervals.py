"""Cylinder intervals: the sets of reals sharing an expansion prefix.

A rank-n cylinder collects every x in (1, 2) whose first n type III terms
(after the leading 1*b^0) follow a fixed path (k_1, l_1), ..., (k_n, l_n).
Each cylinder is an interval with rational endpoints given by the
convergent recurrence; its exact Lebesgue measure and the ratio to its
parent's measure drive the distribution results, so everything here stays
in Fraction arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expand import TermSequence, expand_type3
from .numtypes import DomainError, check_base

__all__ = [
    "CylinderSpec",
    "Interval",
    "cylinder_contains",
    "cylinder_endpoints",
    "cylinder_endpoints_gcf",
    "cylinder_measure",
]


@dataclass(frozen=True)
class Interval:
    """Closed-form rational interval (lo, hi)."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            msg = f"empty interval: lo={self.lo}, hi={self.hi}"
            raise DomainError(msg)

    @property
    def measure(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction | int) -> bool:
        """Open-interval membership test on the endpoints."""
        return self.lo < Fraction(x) < self.hi


@dataclass(frozen=True)
class CylinderSpec:
    """A type III cylinder path: base plus parallel exponent/digit lists."""

    b: int
    ks: tuple[int, ...]
    ls: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.b)
        object.__setattr__(self, "ks", tuple(self.ks))
        object.__setattr__(self, "ls", tuple(self.ls))
        if len(self.ks) != len(self.ls) or not self.ks:
            msg = "ks and ls must be equal-length, non-empty paths"
            raise DomainError(msg)
        for k in self.ks:
            if k < 0:
                msg = f"exponents must be >= 0, got {k}"
                raise DomainError(msg)
        for ell in self.ls:
            if not 1 <= ell <= self.b - 1:
                msg = f"digits must lie in 1..{self.b - 1}, got {ell}"
                raise DomainError(msg)

    @property
    def rank(self) -> int:
        return len(self.ks)


def _convergent_walk(spec: CylinderSpec) -> tuple[int, int, int, int, int]:
    # Seed with the leading term 1*b^0 (p0 = q0 = 1), then apply the
    # type III recurrence along the path.  The numerator feeding term i
    # is b**k_{i-1}, with k_0 = 0 from the seed.
    b = spec.b
    p_prev, q_prev = 1, 0
    p, q = 1, 1
    prev_exponent = 0
    for k, ell in zip(spec.ks, spec.ls):
        alpha = ell * b**k
        beta = b**prev_exponent
        p, p_prev = alpha * p + beta * p_prev, p
        q, q_prev = alpha * q + beta * q_prev, q
        prev_exponent = k
    return p, q, p_prev, q_prev, prev_exponent


def cylinder_endpoints(spec: CylinderSpec) -> Interval:
    """Exact endpoints of the cylinder, sorted as (lo, hi).

    The two boundary points are p_n/q_n and
    (p_n + p_{n-1} b^{k_n}) / (q_n + q_{n-1} b^{k_n}); which one is lower
    depends on the parity of the rank.
    """
    b = spec.b
    p, q, p_prev, q_prev, last_k = _convergent_walk(spec)
    scale = b**last_k
    x1 = Fraction(p, q)
    x2 = Fraction(p + p_prev * scale, q + q_prev * scale)
    return Interval(lo=min(x1, x2), hi=max(x1, x2))


def cylinder_measure(spec: CylinderSpec) -> Fraction:
    """Exact Lebesgue measure (hi - lo) of the cylinder.

    Equals b^(k_1 + ... + k_n) / (q_n (q_n + b^{k_n} q_{n-1})) — the
    endpoint difference collapses to that closed form because the
    determinant of the convergent recurrence is a signed power of b.
    """
    return cylinder_endpoints(spec).measure


def cylinder_contains(spec: CylinderSpec, x: Fraction | int) -> bool:
    """Membership decided by expanding ``x`` and comparing term prefixes.

    Endpoint ownership is ambiguous for interval comparisons (a boundary
    rational's expansion legitimately belongs to one specific cylinder),
    so the test expands ``x`` rather than comparing against endpoints.
    """
    x = Fraction(x)
    if x < 1:
        return False
    e = expand_type3(x, spec.b, max_terms=spec.rank + 2)
    if len(e.terms) < spec.rank + 1:
        return False
    head = e.terms[0]
    if (head.c, head.a) != (1, 0):
        return False
    for i in range(spec.rank):
        t = e.terms[i + 1]
        if (t.a, t.c) != (spec.ks[i], spec.ls[i]):
            return False
    return True


def cylinder_endpoints_gcf(seq: TermSequence, ks: tuple[int, ...] | list[int]) -> Interval:
    """Cylinder endpoints for a generalized expansion, by index path.

    ``ks`` lists 0-based positions in the term sequence for terms
    1..n; the leading term is pinned to index 0 (value 1), mirroring the
    type III seed.  Endpoints are p_n/q_n and
    (p_n + p_{n-1} g_n) / (q_n + q_{n-1} g_n) with g_n the sequence gap
    after the final term.
    """
    ks = tuple(ks)
    if not ks:
        msg = "index path must be non-empty"
        raise DomainError(msg)
    for j in ks:
        if j < 0:
            msg = f"sequence indices must be >= 0, got {j}"
            raise DomainError(msg)
    p_prev, q_prev = 1, 0
    p, q = 1, 1  # seed term: sequence value c_0 = 1
    prev_index = 0
    for j in ks:
        alpha = seq[j]
        beta = seq.gap(prev_index)
        p, p_prev = alpha * p + beta * p_prev, p
        q, q_prev = alpha * q + beta * q_prev, q
        prev_index = j
    scale = seq.gap(prev_index)
    x1 = Fraction(p, q)
    x2 = Fraction(p + p_prev * scale, q + q_prev * scale)
    return Interval(lo=min(x1, x2), hi=max(x1, x2))
