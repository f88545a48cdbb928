"""Logarithmic Khinchine constants and the classical-limit checks.

For almost every input, the geometric mean of the first N expansion terms
converges as N grows; the limit KL_b depends only on the type and the
base.  Types I and III admit closed forms (a two-term expression and a
finite sum respectively), type II is estimated from its iterated term
distribution, and as b grows the type III constant approaches the
classical Khinchine constant of simple continued fractions — the two
``*_gap`` helpers quantify that approach.

All closed-form evaluation happens at 50 significant digits via mpmath;
series tails beyond index 1000 are accumulated in float64 (their summands
are below 1e-6, so double precision contributes error far under the
9-digit reporting scale, at a tiny fraction of the cost).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from mpmath import mp, mpf

from .distribution import dn_mass, iterate_m, m_limit_type3
from .expand import Expansion, Variant
from .numtypes import DomainError, check_base

__all__ = [
    "PUBLISHED_CLASSICAL",
    "PUBLISHED_KL1",
    "PUBLISHED_KL2",
    "PUBLISHED_KL3",
    "KhinchineValue",
    "TermStats",
    "classical_khinchine",
    "kl_limit_gap",
    "kl_type1",
    "kl_type2_estimate",
    "kl_type3",
    "mu_limit_gap",
    "term_stats",
]

_WORK_DPS = 50
_FLOAT_TAIL_START = 1000
_CHUNK = 1_000_000

# Published nine-row tables (b = 2..10), used by the CLI to annotate rows.
PUBLISHED_KL1 = {
    2: 2.656305058,
    3: 2.598065150,
    4: 2.556003239,
    5: 2.524285360,
    6: 2.499311827,
    7: 2.478977440,
    8: 2.461986788,
    9: 2.447498976,
    10: 2.434942582,
}
PUBLISHED_KL2 = {
    2: 2.656305048,
    3: 3.415974174,
    4: 4.064209949,
    5: 4.636437895,
    6: 5.152343739,
    7: 5.624290253,
    8: 6.060673548,
    9: 6.467518102,
    10: 6.849326402,
}
PUBLISHED_KL3 = {
    2: 2.656305058,
    3: 2.666666667,
    4: 2.671738848,
    5: 2.674705520,
    6: 2.676638451,
    7: 2.677992355,
    8: 2.678991102,
    9: 2.679757051,
    10: 2.680362475,
}
PUBLISHED_CLASSICAL = 2.685452


@dataclass(frozen=True)
class KhinchineValue:
    """A computed constant with its exponent and truncation bound.

    ``value = b**exponent_A`` for the base-b constants; the classical
    constant stores its base-2 logarithm in ``exponent_A`` so the identity
    reads the same.  ``tail_bound`` is 0.0 for closed forms and an upper
    bound on the truncation error otherwise.
    """

    value: mpf
    exponent_A: mpf
    tail_bound: float = 0.0


def kl_type1(b: int) -> KhinchineValue:
    """Closed-form type I constant: b**A with A = log b / log(b^2/(2b-1)) - 1."""
    check_base(b)
    with mp.workdps(_WORK_DPS):
        bb = mpf(b)
        A = mp.log(bb) / mp.log(bb * bb / (2 * bb - 1)) - 1
        value = mp.power(bb, A)
    return KhinchineValue(value=value, exponent_A=A)


def _pair_log_tail_f64(lo: int, hi: int) -> float:
    """Sum of log(1 - 1/l) log(1 + 1/l) for lo <= l <= hi, in float64.

    Summands decay like -1/l^2; beyond l = 1000 they are below 1e-6 in
    magnitude, so float64 keeps the absolute error of the whole tail
    far below 1e-12.
    """
    total = 0.0
    start = lo
    while start <= hi:
        stop = min(start + _CHUNK - 1, hi)
        ell = np.arange(start, stop + 1, dtype=float)
        inv = 1.0 / ell
        total += float(np.sum(np.log1p(-inv) * np.log1p(inv)))
        start = stop + 1
    return total


def _pair_log_sum(hi: int) -> mpf:
    """Sum of log(1 - 1/l) log(1 + 1/l) for 2 <= l <= hi, high precision head."""
    head_hi = min(hi, _FLOAT_TAIL_START)
    with mp.workdps(_WORK_DPS):
        total = mpf(0)
        for ell in range(2, head_hi + 1):
            le = mpf(ell)
            total += mp.log(1 - 1 / le) * mp.log(1 + 1 / le)
        if hi > head_hi:
            total += mpf(_pair_log_tail_f64(head_hi + 1, hi))
    return total


def kl_type3(b: int) -> KhinchineValue:
    """Closed-form type III constant: a finite (b-1)-term sum in the exponent."""
    check_base(b)
    S = _pair_log_sum(b)
    with mp.workdps(_WORK_DPS):
        bb = mpf(b)
        denom = mp.log((bb + 1) / (2 * bb))
        A = S / (mp.log(bb) * denom)
        value = mp.exp(S / denom)  # b**A with the log b cancelled
    return KhinchineValue(value=value, exponent_A=A)


def kl_type2_estimate(b: int, iterations: int = 10, k_cap: int = 100) -> KhinchineValue:
    """Type II constant from the iterated term distribution.

    Computes the exponent A = sum of mass(k, l) * (k + log_b l) over
    k <= k_cap and returns b**A.  The distribution grid is sized
    internally (fine enough that the published table is reproduced; base 2
    converges slowest and gets the densest grid).

    No closed form is known for type II, so this is an estimate: the
    reported tail_bound covers the k-truncation of the exponent sum but
    not the grid/iteration error.
    """
    check_base(b)
    if iterations < 1:
        msg = f"iterations must be >= 1, got {iterations}"
        raise DomainError(msg)
    if k_cap < 1:
        msg = f"k_cap must be >= 1, got {k_cap}"
        raise DomainError(msg)
    grid_points = 16385 if b == 2 else 2001
    m = iterate_m(Variant.TYPE2, b, grid_points, iterations, sum_cap=100)

    log_b = math.log(b)
    exponent = 0.0
    for k in range(k_cap + 1):
        for ell in range(1, b):
            mass = dn_mass(Variant.TYPE2, m, k, ell)
            exponent += mass * (k + math.log(ell) / log_b)
    # Exponent tail: masses beyond k_cap decay geometrically and each
    # contributes at most (k+1) to the weight.
    tail_exp = 4.0 * (k_cap + 2) * float(b) ** (-k_cap)
    with mp.workdps(_WORK_DPS):
        value = mp.power(mpf(b), mpf(exponent))
        tail_bound = float(value * (mp.power(mpf(b), mpf(tail_exp)) - 1))
    return KhinchineValue(value=value, exponent_A=mpf(exponent), tail_bound=tail_bound)


def classical_khinchine(l_cap: int) -> KhinchineValue:
    """Truncated series for the classical Khinchine constant.

    log K = -(1/log 2) * sum over 2 <= l <= l_cap of
    log(1 - 1/l) log(1 + 1/l); each dropped summand is below
    1/(l(l-1)), giving the geometric tail bound on the value.
    """
    if not isinstance(l_cap, int) or l_cap < 2:
        msg = f"l_cap must be an integer >= 2, got {l_cap!r}"
        raise DomainError(msg)
    S = _pair_log_sum(l_cap)
    with mp.workdps(_WORK_DPS):
        log2 = mp.log(2)
        log_value = -S / log2
        value = mp.exp(log_value)
        exponent_A = log_value / log2
        tail_bound = float(value * (mp.exp(1 / (l_cap * log2)) - 1))
    return KhinchineValue(value=value, exponent_A=exponent_A, tail_bound=tail_bound)


@lru_cache(maxsize=4)
def _classical_cached(l_cap: int) -> KhinchineValue:
    return classical_khinchine(l_cap)


def kl_limit_gap(b: int) -> float:
    """|KL3(b) - K|, the distance to the classical constant at l_cap 10^7."""
    check_base(b)
    classical = _classical_cached(10_000_000)
    k3 = kl_type3(b)
    with mp.workdps(_WORK_DPS):
        return float(abs(k3.value - classical.value))


def mu_limit_gap(b: int, x: float) -> float:
    """|m_limit_type3(b, x) - log2(x)|: the large-b collapse onto the
    classical Gauss measure distribution."""
    check_base(b)
    if not 1.0 < x < 2.0:
        msg = f"x must lie in (1, 2), got {x}"
        raise DomainError(msg)
    return abs(m_limit_type3(b, x) - math.log2(x))


# ---------------------------------------------------------------------------
# empirical term statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermStats:
    """Histogram and geometric-mean accumulator of one expansion's terms.

    ``log_sum`` is the high-precision sum of log_b(c * b**a) over the
    counted terms, accumulated from the histogram in sorted key order so
    that equal histograms always produce bit-identical sums.
    """

    base: int
    histogram: dict[tuple[int, int], int]
    n_terms: int
    log_sum: mpf

    @property
    def geometric_mean(self) -> mpf:
        """Exactly b**(log_sum / n_terms) at working precision."""
        with mp.workdps(_WORK_DPS):
            return mp.power(mpf(self.base), self.log_sum / self.n_terms)

    def proportion(self, k: int, l: int) -> float:
        """Observed fraction of counted terms equal to l * b**k."""
        return self.histogram.get((k, l), 0) / self.n_terms


def term_stats(e: Expansion, skip_first: int = 1) -> TermStats:
    """Histogram the terms of a continued-logarithm expansion.

    The first ``skip_first`` terms are excluded: the leading term encodes
    the integer part, which the distribution theory normalizes away.

    Raises:
        DomainError: for generalized expansions (their terms are not
            (digit, exponent) pairs) or when too few terms remain.
    """
    if e.variant is Variant.GCF:
        msg = "term_stats needs a continued-logarithm expansion, not Gcf"
        raise DomainError(msg)
    if skip_first < 0:
        msg = f"skip_first must be >= 0, got {skip_first}"
        raise DomainError(msg)
    counted = e.terms[skip_first:]
    if not counted:
        msg = f"expansion has {len(e.terms)} terms; need more than skip_first={skip_first}"
        raise DomainError(msg)
    hist = Counter((t.a, t.c) for t in counted)
    b = e.base
    assert isinstance(b, int)
    with mp.workdps(_WORK_DPS):
        log_b = mp.log(b)
        total = mpf(0)
        for (k, ell), count in sorted(hist.items()):
            total += count * (k + mp.log(ell) / log_b)
    return TermStats(
        base=b,
        histogram=dict(sorted(hist.items())),
        n_terms=len(counted),
        log_sum=total,
    )
