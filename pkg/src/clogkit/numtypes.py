"""Exact rational scaffolding shared by every expansion.

All values that matter are rationals, and every comparison against a power
of the base is done in integer arithmetic.  Floating point appears nowhere
in this module: a floor-log computed through ``math.log`` misclassifies
inputs that sit on (or within one ulp of) an exact power, and those are
precisely the inputs where termination is decided.

``BigRational`` is an alias for :class:`fractions.Fraction`, which already
guarantees the two invariants we need — positive denominator and fully
reduced storage — with arbitrary-precision integers underneath.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction

__all__ = [
    "BigRational",
    "DomainError",
    "ParseError",
    "PrecisionGuard",
    "check_base",
    "floor_log_base",
    "leading_digit",
    "rational_from_decimal",
    "significant_digits",
    "term_cost_bits",
]

BigRational = Fraction

_LOG2_10 = math.log2(10)

_DECIMAL_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)$")


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParseError(ValueError):
    """A textual input does not conform to the expected grammar."""


def check_base(b: int) -> int:
    """Validate an integer base.

    Args:
        b: candidate base.

    Returns:
        ``b`` itself, for call-chaining.

    Raises:
        DomainError: if ``b`` is not an integer that is at least 2.
    """
    if not isinstance(b, int) or isinstance(b, bool) or b < 2:
        msg = f"base must be an integer >= 2, got {b!r}"
        raise DomainError(msg)
    return b


def rational_from_decimal(s: str, exponent: int = 0) -> Fraction:
    """Parse a decimal numeral into the exact rational it denotes.

    The literal is taken at face value: ``"0.333"`` is 333/1000, not a
    rounded third.  An optional decimal ``exponent`` scales the result by
    ``10**exponent``, which lets callers split very long inputs into a
    digit block and a magnitude.

    Args:
        s: signed decimal numeral, e.g. ``"1.5"``, ``"-3"``, ``".25"``.
        exponent: power of ten to multiply the literal by.

    Returns:
        The reduced rational value.

    Raises:
        ParseError: if ``s`` is not a plain decimal numeral (scientific
            notation and stray whitespace are rejected on purpose).
    """
    if not isinstance(s, str) or not _DECIMAL_RE.match(s):
        msg = f"not a decimal numeral: {s!r}"
        raise ParseError(msg)
    value = Fraction(s)
    if exponent:
        if exponent > 0:
            value *= 10**exponent
        else:
            value /= 10**-exponent
    return value


def significant_digits(s: str) -> int:
    """Count the significant decimal digits of a numeral string.

    Leading zeros carry no information and are skipped; every digit from
    the first nonzero one onward counts, including trailing zeros (writing
    ``"1.50"`` is a claim of three-digit precision).  Used to size the
    information budget of a :class:`PrecisionGuard`.

    Raises:
        ParseError: if ``s`` is not a decimal numeral.
    """
    if not isinstance(s, str) or not _DECIMAL_RE.match(s):
        msg = f"not a decimal numeral: {s!r}"
        raise ParseError(msg)
    digits = s.lstrip("+-").replace(".", "").lstrip("0")
    # "0", "0.0" etc. denote zero exactly; call that one digit of information.
    return max(len(digits), 1)


def floor_log_base(y: Fraction | int, b: int) -> int:
    """Return the unique ``a`` with ``b**a <= y < b**(a+1)``.

    The search walks exact powers of ``b`` by repeated squaring, so the
    cost is O(log a) big-integer comparisons and the answer is exact even
    when ``y`` is an exact power or astronomically large.

    Args:
        y: positive rational.
        b: base, at least 2.

    Raises:
        DomainError: if ``y <= 0`` or ``b`` is invalid.
    """
    check_base(b)
    y = Fraction(y)
    if y <= 0:
        msg = f"floor_log_base requires y > 0, got {y}"
        raise DomainError(msg)
    if y < 1:
        inv = 1 / y
        m = floor_log_base(inv, b)
        # b**m <= 1/y < b**(m+1)  =>  a = -m when y is exactly b**-m,
        # otherwise a = -(m+1).
        return -m if inv == b**m else -m - 1
    # Collect b, b^2, b^4, ... while they stay <= y, then assemble the
    # exponent greedily from the largest squaring downward.
    pows: list[tuple[int, int]] = [(b, 1)]
    while True:
        p, e = pows[-1]
        if p * p <= y:
            pows.append((p * p, 2 * e))
        else:
            break
    a = 0
    acc = 1
    for p, e in reversed(pows):
        if acc * p <= y:
            acc *= p
            a += e
    return a


def leading_digit(y: Fraction | int, b: int, a: int) -> int:
    """Extract the leading base-``b`` digit of ``y`` at exponent ``a``.

    Args:
        y: rational with ``b**a <= y < b**(a+1)``.
        b: base.
        a: the floor-log of ``y``, normally from :func:`floor_log_base`.

    Returns:
        ``c = floor(y / b**a)``, always in ``{1, ..., b-1}``; an exact
        power of ``b`` yields ``c = 1``.

    Raises:
        DomainError: if the bracketing precondition fails.
    """
    check_base(b)
    y = Fraction(y)
    scale = Fraction(b) ** a
    if not (scale <= y < scale * b):
        msg = f"leading_digit precondition b^a <= y < b^(a+1) fails for y={y}, b={b}, a={a}"
        raise DomainError(msg)
    q = y / scale
    return q.numerator // q.denominator


def term_cost_bits(b: int, k: int) -> float:
    """Information cost, in bits, of emitting the term ``c * b**k``.

    A term with exponent ``k`` pins down roughly ``(k+1)*log2(b)`` bits of
    the input plus one bit for the digit choice; the guard charges this
    against the input's digit budget.
    """
    check_base(b)
    if k < 0:
        msg = f"term exponent must be >= 0, got {k}"
        raise DomainError(msg)
    return (k + 1) * math.log2(b) + 1.0


@dataclass(frozen=True)
class PrecisionGuard:
    """Budget tracker for expansions of truncated real inputs.

    A decimal input with ``d`` significant digits carries about
    ``d * log2(10)`` bits of information.  Each extracted term spends part
    of that budget; once it is gone, further terms would be artifacts of
    the truncation rather than properties of the underlying number.

    Instances are immutable: :meth:`charge` returns a new guard, so a
    guard value is a snapshot that can be shared freely between threads.

    Attributes:
        input_digits: significant decimal digits supplied by the caller.
        consumed_bits: information already spent on emitted terms.
    """

    input_digits: int
    consumed_bits: float = 0.0

    def __post_init__(self) -> None:
        if self.input_digits < 1:
            msg = f"input_digits must be >= 1, got {self.input_digits}"
            raise DomainError(msg)
        if self.consumed_bits < 0:
            msg = f"consumed_bits must be >= 0, got {self.consumed_bits}"
            raise DomainError(msg)

    @property
    def budget_bits(self) -> float:
        """Total information budget implied by the input digits."""
        return self.input_digits * _LOG2_10

    def can_afford(self, cost: float) -> bool:
        """Whether ``cost`` more bits still fit in the budget."""
        return self.consumed_bits + cost <= self.budget_bits

    def charge(self, cost: float) -> "PrecisionGuard":
        """Return a new guard with ``cost`` bits added to the tally."""
        if cost < 0:
            msg = f"cannot charge a negative cost: {cost}"
            raise DomainError(msg)
        return replace(self, consumed_bits=self.consumed_bits + cost)
