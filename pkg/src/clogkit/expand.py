"""Continued-logarithm and generalized continued-fraction expansions.

Four expansion processes share one skeleton.  Writing ``y0 = x`` and, at
step ``n``, ``a_n = floor(log_b y_n)`` with leading digit
``c_n = floor(y_n / b**a_n)``:

* type I    — terms ``b**a_n``, recursion ``y' = (b-1) b**a_n / (y - b**a_n)``,
  halting when ``y_n`` is an exact power of ``b``;
* type II   — terms ``c_n b**a_n``, recursion ``y' = c_n b**a_n / (y - c_n b**a_n)``;
* type III  — terms ``c_n b**a_n``, recursion ``y' = b**a_n / (y - c_n b**a_n)``;
* generalized — terms drawn from an increasing integer sequence ``(c_j)``
  with ``c_0 = 1``: the step picks ``j_n = max{j : c_j <= y_n}`` and uses
  ``y' = (c_{j_n+1} - c_{j_n}) / (y_n - c_{j_n})``.

Every step is exact.  Internally a remainder is carried as an integer pair
``(u, v)`` standing for ``u/v``; the pair is not reduced between steps
because every decision (digit extraction, halting) is scale-invariant, and
deferring the gcd keeps long expansions cheap.  All values that cross the
public boundary are reduced ``Fraction`` objects or raw recurrence
integers, as documented per operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .numtypes import (
    DomainError,
    ParseError,
    PrecisionGuard,
    check_base,
    floor_log_base,
    leading_digit,
    term_cost_bits,
)

__all__ = [
    "MAX_TERMS_CAP",
    "ConvergentPair",
    "Expansion",
    "Status",
    "Term",
    "TermSequence",
    "Variant",
    "clog_terms",
    "convergents",
    "denominator_reduced",
    "evaluate_partial_quotients",
    "expand_gcf",
    "expand_type1",
    "expand_type2",
    "expand_type3",
    "from_json_dict",
    "naturals",
    "powers_of",
    "reconstruct_from_remainder",
    "sequence_from_name",
    "tail_value",
    "to_json_dict",
    "to_text",
    "value",
]

MAX_TERMS_CAP = 100_000


class Variant(str, Enum):
    """Which of the four expansion processes produced a result."""

    TYPE1 = "TypeI"
    TYPE2 = "TypeII"
    TYPE3 = "TypeIII"
    GCF = "Gcf"


class Status(str, Enum):
    """How an expansion ended."""

    TERMINATED = "Terminated"
    TRUNCATED_AT_LIMIT = "TruncatedAtLimit"
    PRECISION_EXHAUSTED = "PrecisionExhausted"


@dataclass(frozen=True)
class Term:
    """One expansion term.

    For the continued-logarithm variants the term denotes ``c * b**a``
    (type I always has ``c = 1``).  For the generalized variant only
    ``gcf_index`` is meaningful: it is the position ``j_n`` in the term
    sequence, and ``c``/``a`` are absent.
    """

    c: int | None
    a: int | None
    gcf_index: int | None = None

    def __post_init__(self) -> None:
        if self.gcf_index is None:
            if self.c is None or self.a is None:
                msg = "continued-logarithm terms need both c and a"
                raise DomainError(msg)
            if self.c < 1 or self.a < 0:
                msg = f"invalid term c={self.c}, a={self.a}"
                raise DomainError(msg)
        else:
            if self.c is not None or self.a is not None:
                msg = "generalized terms carry only gcf_index"
                raise DomainError(msg)
            if self.gcf_index < 0:
                msg = f"gcf_index must be >= 0, got {self.gcf_index}"
                raise DomainError(msg)


class TermSequence:
    """Increasing integer sequence ``(c_j)`` with ``c_0 = 1``.

    Wraps a generator function and memoizes the values it yields,
    validating the two structural requirements as they stream in.  A
    sequence may supply two fast paths: ``locate`` returns the largest
    index ``j`` with ``c_j <= y`` without enumerating the prefix, and
    ``value_at`` is a closed form for ``c_j``.  Both matter for sequences
    like the naturals queried at astronomically large ``y`` — the simple
    continued fraction of a number near 10**12 touches index ~10**12, and
    streaming a prefix that long is not an option.

    Args:
        gen: zero-argument callable returning a fresh iterator of values.
        name: short identifier used in serialized output (e.g. ``"naturals"``).
        locate: optional ``y -> j`` fast path; must agree with the values.
        value_at: optional ``j -> c_j`` closed form; checked at indices 0
            and 1 on construction and spot-checked wherever it is used.
    """

    def __init__(
        self,
        gen: Callable[[], Iterator[int]],
        name: str = "custom",
        locate: Callable[[Fraction], int] | None = None,
        value_at: Callable[[int], int] | None = None,
    ) -> None:
        self._gen = gen
        self._iter = gen()
        self._memo: list[int] = []
        self._locate = locate
        self._value_at = value_at
        self.name = name
        if value_at is not None:
            if value_at(0) != 1:
                msg = f"term sequence {name!r}: closed form has c_0 = {value_at(0)}, not 1"
                raise DomainError(msg)
            if value_at(1) <= 1:
                msg = f"term sequence {name!r}: closed form not increasing at index 1"
                raise DomainError(msg)

    def __getitem__(self, j: int) -> int:
        if j < 0:
            msg = f"sequence index must be >= 0, got {j}"
            raise DomainError(msg)
        if self._value_at is not None:
            v = self._value_at(j)
            if not isinstance(v, int):
                msg = f"term sequence {self.name!r} closed form gave non-integer {v!r}"
                raise DomainError(msg)
            return v
        while len(self._memo) <= j:
            try:
                nxt = next(self._iter)
            except StopIteration:
                msg = f"term sequence {self.name!r} ended before index {j}"
                raise DomainError(msg) from None
            if not isinstance(nxt, int):
                msg = f"term sequence {self.name!r} yielded non-integer {nxt!r}"
                raise DomainError(msg)
            if not self._memo:
                if nxt != 1:
                    msg = f"term sequence must start with c_0 = 1, got {nxt}"
                    raise DomainError(msg)
            elif nxt <= self._memo[-1]:
                msg = (
                    f"term sequence {self.name!r} is not strictly increasing "
                    f"at index {len(self._memo)}: {self._memo[-1]} -> {nxt}"
                )
                raise DomainError(msg)
            self._memo.append(nxt)
        return self._memo[j]

    def gap(self, j: int) -> int:
        """``c_{j+1} - c_j``, the numerator entering after term ``j``."""
        g = self[j + 1] - self[j]
        # The generator path validates monotonicity as values stream in; a
        # closed form gets the same check locally, where it is consumed.
        if g <= 0:
            msg = f"term sequence {self.name!r} is not increasing at index {j + 1}"
            raise DomainError(msg)
        return g

    def largest_leq(self, y: Fraction | int) -> int:
        """Largest index ``j`` with ``c_j <= y`` (requires ``y >= 1``)."""
        y = Fraction(y)
        if y < 1:
            msg = f"largest_leq requires y >= 1, got {y}"
            raise DomainError(msg)
        if self._locate is not None:
            j = self._locate(y)
            # Trust but verify: the fast path must bracket y correctly.
            if self[j] <= y and self[j + 1] > y:
                return j
            msg = f"locate fast path of {self.name!r} misplaced y={y} at j={j}"
            raise DomainError(msg)
        j = 0
        while self[j + 1] <= y:
            j += 1
        return j

    def values(self, prefix: int) -> list[int]:
        """The first ``prefix`` values, materialized."""
        if prefix < 1:
            msg = f"prefix must be >= 1, got {prefix}"
            raise DomainError(msg)
        if self._value_at is not None:
            return [self[i] for i in range(prefix)]
        self[prefix - 1]
        return self._memo[:prefix]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"TermSequence({self.name!r})"


def naturals() -> TermSequence:
    """The sequence 1, 2, 3, …; its expansions are simple continued fractions."""

    def gen() -> Iterator[int]:
        j = 1
        while True:
            yield j
            j += 1

    def locate(y: Fraction) -> int:
        return y.numerator // y.denominator - 1

    return TermSequence(gen, name="naturals", locate=locate, value_at=lambda j: j + 1)


def powers_of(b: int) -> TermSequence:
    """The sequence 1, b, b², …; its expansions match type I base ``b``."""
    check_base(b)

    def gen() -> Iterator[int]:
        p = 1
        while True:
            yield p
            p *= b

    return TermSequence(
        gen,
        name=f"powers:{b}",
        locate=lambda y: floor_log_base(y, b),
        value_at=lambda j: b**j,
    )


def clog_terms(b: int) -> TermSequence:
    """All values ``l * b**k`` (1 <= l <= b-1) in increasing order.

    Position ``j = k*(b-1) + (l-1)`` holds the value ``l * b**k``, so this
    sequence makes the generalized process reproduce type III base ``b``.
    """
    check_base(b)

    def gen() -> Iterator[int]:
        k = 0
        while True:
            for ell in range(1, b):
                yield ell * b**k
            k += 1

    def locate(y: Fraction) -> int:
        a = floor_log_base(y, b)
        c = leading_digit(y, b, a)
        return a * (b - 1) + (c - 1)

    def value_at(j: int) -> int:
        k, ell = divmod(j, b - 1)
        return (ell + 1) * b**k

    return TermSequence(gen, name=f"clog:{b}", locate=locate, value_at=value_at)


def sequence_from_name(spec: str) -> TermSequence:
    """Build a built-in term sequence from its serialized name.

    Accepts ``"naturals"``, ``"powers:B"``, and ``"clog:B"``.
    """
    if spec == "naturals":
        return naturals()
    if spec.startswith("powers:"):
        return powers_of(_parse_base(spec[len("powers:") :]))
    if spec.startswith("clog:"):
        return clog_terms(_parse_base(spec[len("clog:") :]))
    msg = f"unknown term sequence {spec!r} (expected naturals, powers:B, or clog:B)"
    raise ParseError(msg)


def _parse_base(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        msg = f"bad base in sequence name: {text!r}"
        raise ParseError(msg) from None


@dataclass(frozen=True)
class Expansion:
    """An expansion result: variant, base (or term sequence), terms, status."""

    variant: Variant
    base: int | TermSequence
    terms: tuple[Term, ...]
    status: Status

    def __post_init__(self) -> None:
        if self.variant is Variant.GCF:
            if not isinstance(self.base, TermSequence):
                msg = "generalized expansions carry their TermSequence as base"
                raise DomainError(msg)
        else:
            check_base(self.base)  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.terms)


class ConvergentPair(NamedTuple):
    """Raw recurrence values ``(p_n, q_n)``; deliberately not reduced."""

    p: int
    q: int


# ---------------------------------------------------------------------------
# expansion drivers
# ---------------------------------------------------------------------------


def _check_expand_args(x: Fraction | int, max_terms: int) -> Fraction:
    x = Fraction(x)
    if x < 1:
        msg = f"expansion requires x >= 1, got {x}"
        raise DomainError(msg)
    if not 1 <= max_terms <= MAX_TERMS_CAP:
        msg = f"max_terms must be in [1, {MAX_TERMS_CAP}], got {max_terms}"
        raise DomainError(msg)
    return x


def _floor_log_ratio(u: int, v: int, b: int) -> int:
    """Largest a with b**a <= u/v, for u >= v >= 1, by direct ascent.

    Exponents of successive remainders are small on average (the digit
    distributions decay geometrically), so a linear climb beats repeated
    squaring here; the public :func:`floor_log_base` stays logarithmic for
    arbitrary callers.
    """
    a = 0
    t = v * b
    while t <= u:
        t *= b
        a += 1
    return a


def _expand_clog(
    x: Fraction | int,
    b: int,
    max_terms: int,
    variant: Variant,
    guard: PrecisionGuard | None,
) -> Expansion:
    check_base(b)
    x = _check_expand_args(x, max_terms)
    u, v = x.numerator, x.denominator
    terms: list[Term] = []
    status = Status.TRUNCATED_AT_LIMIT
    while True:
        a = _floor_log_ratio(u, v, b)
        pw = b**a
        c = u // (v * pw)
        rem = u - c * pw * v
        if variant is Variant.TYPE1:
            # Type I ignores the digit: the term is b**a and the remainder
            # is measured from b**a, not from c*b**a.
            rem = u - pw * v
            c = 1
        if guard is not None and terms:
            cost = term_cost_bits(b, a)
            if not guard.can_afford(cost):
                status = Status.PRECISION_EXHAUSTED
                break
            guard = guard.charge(cost)
        terms.append(Term(c=c, a=a))
        if rem == 0:
            status = Status.TERMINATED
            break
        if len(terms) >= max_terms:
            break
        if variant is Variant.TYPE1:
            u, v = (b - 1) * pw * v, rem
        elif variant is Variant.TYPE2:
            u, v = c * pw * v, rem
        else:
            u, v = pw * v, rem
    return Expansion(variant=variant, base=b, terms=tuple(terms), status=status)


def expand_type1(
    x: Fraction | int,
    b: int,
    max_terms: int = 64,
    *,
    guard: PrecisionGuard | None = None,
) -> Expansion:
    """Expand ``x >= 1`` as a type I base-``b`` continued logarithm.

    Terms are pure powers ``b**a_n`` with numerators ``(b-1)*b**a_n``; the
    process halts exactly when a remainder is an exact power of ``b``.
    Rational inputs need not terminate (base 3 applied to 2 cycles
    forever), so ``max_terms`` bounds the output; an optional ``guard``
    stops the expansion once a truncated input's digits are spent.
    """
    return _expand_clog(x, b, max_terms, Variant.TYPE1, guard)


def expand_type2(
    x: Fraction | int,
    b: int,
    max_terms: int = 64,
    *,
    guard: PrecisionGuard | None = None,
) -> Expansion:
    """Expand ``x >= 1`` as a type II base-``b`` continued logarithm.

    Terms are ``c_n * b**a_n`` with numerators ``c_n * b**a_n``; every
    rational input terminates.
    """
    return _expand_clog(x, b, max_terms, Variant.TYPE2, guard)


def expand_type3(
    x: Fraction | int,
    b: int,
    max_terms: int = 64,
    *,
    guard: PrecisionGuard | None = None,
) -> Expansion:
    """Expand ``x >= 1`` as a type III base-``b`` continued logarithm.

    Terms are ``c_n * b**a_n`` with numerators ``b**a_n``; every rational
    input terminates, and in base 2 the number of terms of ``p/q`` is
    O(log p).
    """
    return _expand_clog(x, b, max_terms, Variant.TYPE3, guard)


def expand_gcf(
    x: Fraction | int,
    seq: TermSequence,
    max_terms: int = 64,
    *,
    guard: PrecisionGuard | None = None,
) -> Expansion:
    """Expand ``x >= 1`` against an arbitrary increasing term sequence.

    Step ``n`` picks the largest sequence value not exceeding the
    remainder; the next remainder is ``(c_{j+1} - c_j) / (y - c_j)``.
    With the naturals this is the simple continued fraction; with the
    powers of ``b`` it reproduces type I.
    """
    x = _check_expand_args(x, max_terms)
    u, v = x.numerator, x.denominator
    terms: list[Term] = []
    status = Status.TRUNCATED_AT_LIMIT
    while True:
        j = seq.largest_leq(Fraction(u, v))
        a_val = seq[j]
        rem = u - a_val * v
        if guard is not None and terms:
            cost = math.log2(seq[j + 1]) + 1.0
            if not guard.can_afford(cost):
                status = Status.PRECISION_EXHAUSTED
                break
            guard = guard.charge(cost)
        terms.append(Term(c=None, a=None, gcf_index=j))
        if rem == 0:
            status = Status.TERMINATED
            break
        if len(terms) >= max_terms:
            break
        u, v = seq.gap(j) * v, rem
    return Expansion(variant=Variant.GCF, base=seq, terms=tuple(terms), status=status)


# ---------------------------------------------------------------------------
# term values and numerators
# ---------------------------------------------------------------------------


def _term_value(e: Expansion, n: int) -> int:
    t = e.terms[n]
    if e.variant is Variant.GCF:
        assert isinstance(e.base, TermSequence)
        return e.base[t.gcf_index]  # type: ignore[index]
    assert t.c is not None and t.a is not None
    if e.variant is Variant.TYPE1:
        return e.base**t.a  # type: ignore[operator]
    return t.c * e.base**t.a  # type: ignore[operator]


def _numerator_after(e: Expansion, n: int) -> int:
    """The fraction numerator introduced by term ``n`` (feeding term n+1)."""
    t = e.terms[n]
    if e.variant is Variant.GCF:
        assert isinstance(e.base, TermSequence)
        return e.base.gap(t.gcf_index)  # type: ignore[arg-type]
    assert t.c is not None and t.a is not None
    b = e.base
    if e.variant is Variant.TYPE1:
        return (b - 1) * b**t.a  # type: ignore[operator]
    if e.variant is Variant.TYPE2:
        return t.c * b**t.a  # type: ignore[operator]
    return b**t.a  # type: ignore[operator]


def convergents(e: Expansion) -> list[ConvergentPair]:
    """Numerators and denominators ``(p_n, q_n)`` of every truncation.

    Seeded ``p_{-1} = 1, q_{-1} = 0, p_0 = first term, q_0 = 1`` and grown
    by ``p_n = t_n p_{n-1} + beta_n p_{n-2}`` where ``beta_n`` is the
    numerator introduced by term ``n-1``.  The integers are returned raw —
    the determinant identity ``p_n q_{n-1} - q_n p_{n-1}`` holds for these
    exact recurrence values, not for reduced quotients.
    """
    if not e.terms:
        msg = "cannot take convergents of an empty expansion"
        raise DomainError(msg)
    p_prev, q_prev = 1, 0
    p, q = _term_value(e, 0), 1
    out = [ConvergentPair(p, q)]
    for n in range(1, len(e.terms)):
        alpha = _term_value(e, n)
        beta = _numerator_after(e, n - 1)
        p, p_prev = alpha * p + beta * p_prev, p
        q, q_prev = alpha * q + beta * q_prev, q
        out.append(ConvergentPair(p, q))
    return out


def value(e: Expansion) -> Fraction:
    """The exact value of the final convergent (= the input when Terminated)."""
    last = convergents(e)[-1]
    return Fraction(last.p, last.q)


def tail_value(e: Expansion, k: int) -> Fraction:
    """Exact value of the remainder ``r_k`` — the tail starting at term ``k``.

    Only meaningful when the expansion Terminated (otherwise the tail's
    value is not determined by the listed terms).
    """
    if not 0 <= k < len(e.terms):
        msg = f"tail index {k} out of range for {len(e.terms)} terms"
        raise DomainError(msg)
    if e.status is not Status.TERMINATED:
        msg = "tail_value needs a Terminated expansion"
        raise DomainError(msg)
    sub = Expansion(variant=e.variant, base=e.base, terms=e.terms[k:], status=e.status)
    return value(sub)


def reconstruct_from_remainder(e: Expansion, k: int, r_k: Fraction | int) -> Fraction:
    """Rebuild the expanded value from convergents ``k-1, k-2`` and ``r_k``.

    Returns ``(p_{k-1} r_k + p_{k-2} beta_k) / (q_{k-1} r_k + q_{k-2} beta_k)``
    where ``beta_k`` is the numerator introduced by term ``k-1``.  Feeding
    the true remainder returns the original value exactly; ``k`` may run
    from 1 through ``len(e.terms)``.
    """
    r_k = Fraction(r_k)
    if r_k < 1:
        msg = f"remainders are >= 1, got {r_k}"
        raise DomainError(msg)
    n = len(e.terms)
    if not 1 <= k <= n:
        msg = f"remainder index must satisfy 1 <= k <= {n}, got {k}"
        raise DomainError(msg)
    conv = convergents(e)
    p1, q1 = conv[k - 1]
    p2, q2 = (conv[k - 2] if k >= 2 else ConvergentPair(1, 0))
    beta = _numerator_after(e, k - 1)
    return (p1 * r_k + p2 * beta) / (q1 * r_k + q2 * beta)


def denominator_reduced(e: Expansion) -> list[tuple[Fraction, int]]:
    """Equivalent continued fraction with every partial denominator 1.

    Rescaling the classical equivalence transform by ``d_n = 1/t_n``
    (and ``d_0 = 1``) turns ``t_0 + beta_1/(t_1 + beta_2/(t_2 + ...))``
    into ``t_0 + n_1/(1 + n_2/(1 + ...))`` with ``n_1 = beta_1/t_1`` and
    ``n_n = beta_n/(t_n t_{n-1})``.  Returns ``[(t_0, 1), (n_1, 1), ...]``;
    evaluating either form to the same depth gives the same convergent.
    """
    if not e.terms:
        msg = "cannot transform an empty expansion"
        raise DomainError(msg)
    pairs: list[tuple[Fraction, int]] = [(Fraction(_term_value(e, 0)), 1)]
    for n in range(1, len(e.terms)):
        beta = _numerator_after(e, n - 1)
        t_n = _term_value(e, n)
        t_prev = _term_value(e, n - 1) if n >= 2 else 1
        pairs.append((Fraction(beta, t_n * t_prev), 1))
    return pairs


def evaluate_partial_quotients(pairs: list[tuple[Fraction, int]], depth: int | None = None) -> Fraction:
    """Evaluate ``t_0 + n_1/(1 + n_2/(1 + ...))`` down to ``depth`` terms.

    ``depth`` counts terms as in :func:`convergents`: depth ``n`` uses
    ``pairs[0..n]``.  Defaults to the full list.
    """
    if not pairs:
        msg = "nothing to evaluate"
        raise DomainError(msg)
    if depth is None:
        depth = len(pairs) - 1
    if not 0 <= depth < len(pairs):
        msg = f"depth {depth} out of range"
        raise DomainError(msg)
    acc = Fraction(1)
    for numerator, _one in reversed(pairs[1 : depth + 1]):
        acc = 1 + numerator / acc
    # acc now holds the continued tail 1 + n_1/(1 + ...) shifted once; undo:
    head, _ = pairs[0]
    if depth == 0:
        return Fraction(head)
    # the loop folded n_1 into acc already — recover t_0 + (acc - 1) form:
    return head + (acc - 1)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def to_json_dict(e: Expansion) -> dict:
    """JSON-ready dict: ``{variant, base, terms, status}``.

    Continued-logarithm terms serialize as ``{"c": c, "a": a}``;
    generalized terms as ``{"j": index}`` with the sequence's name in
    ``base``.
    """
    if e.variant is Variant.GCF:
        assert isinstance(e.base, TermSequence)
        base: int | str = e.base.name
        terms = [{"j": t.gcf_index} for t in e.terms]
    else:
        base = e.base  # type: ignore[assignment]
        terms = [{"c": t.c, "a": t.a} for t in e.terms]
    return {
        "variant": e.variant.value,
        "base": base,
        "terms": terms,
        "status": e.status.value,
    }


def from_json_dict(d: dict) -> Expansion:
    """Inverse of :func:`to_json_dict` (built-in sequences only for Gcf)."""
    try:
        variant = Variant(d["variant"])
        status = Status(d["status"])
        raw_terms = d["terms"]
        raw_base = d["base"]
    except (KeyError, ValueError) as exc:
        msg = f"malformed expansion dict: {exc}"
        raise ParseError(msg) from None
    if variant is Variant.GCF:
        seq = sequence_from_name(raw_base)
        terms = tuple(Term(c=None, a=None, gcf_index=int(t["j"])) for t in raw_terms)
        return Expansion(variant=variant, base=seq, terms=terms, status=status)
    terms = tuple(Term(c=int(t["c"]), a=int(t["a"])) for t in raw_terms)
    return Expansion(variant=variant, base=int(raw_base), terms=terms, status=status)


def to_text(e: Expansion) -> str:
    """Compact bracket form, e.g. ``[1*2^0; 1*2^1, 1*2^2]``.

    Generalized expansions print their term values: ``[1; 2]``.
    """
    if e.variant is Variant.GCF:
        parts = [str(_term_value(e, n)) for n in range(len(e.terms))]
    else:
        parts = [f"{t.c}*{e.base}^{t.a}" for t in e.terms]
    if not parts:
        return "[]"
    if len(parts) == 1:
        return f"[{parts[0]}]"
    return f"[{parts[0]}; " + ", ".join(parts[1:]) + "]"
