from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clogkit import (
    DomainError,
    Expansion,
    ParseError,
    PrecisionGuard,
    Status,
    Term,
    TermSequence,
    Variant,
    clog_terms,
    convergents,
    denominator_reduced,
    evaluate_partial_quotients,
    expand_gcf,
    expand_type1,
    expand_type2,
    expand_type3,
    from_json_dict,
    naturals,
    powers_of,
    reconstruct_from_remainder,
    sequence_from_name,
    tail_value,
    to_json_dict,
    to_text,
    value,
)

# Strategy shared by the round-trip properties: rationals in [1, ~2^31).
rationals = st.builds(
    lambda p, q: 1 + Fraction(p, q),
    st.integers(min_value=0, max_value=2**30),
    st.integers(min_value=1, max_value=2**30),
)

small_bases = st.integers(min_value=2, max_value=7)


def term_value(e: Expansion, n: int) -> int:
    """Independent reading of term n's value straight off the public data."""
    t = e.terms[n]
    if e.variant is Variant.GCF:
        return e.base[t.gcf_index]
    return t.c * e.base**t.a


def numerator_after(e: Expansion, n: int) -> int:
    """The fraction numerator that term n feeds into the next level."""
    t = e.terms[n]
    if e.variant is Variant.GCF:
        return e.base.gap(t.gcf_index)
    b = e.base
    if e.variant is Variant.TYPE1:
        return (b - 1) * b**t.a
    if e.variant is Variant.TYPE2:
        return t.c * b**t.a
    return b**t.a


def replay_remainders(x: Fraction, e: Expansion) -> list[Fraction]:
    """Recompute y_0, y_1, ... by running the recursion in plain Fractions.

    Stops before a division by zero, i.e. returns y_0..y_L where y_L is the
    last defined remainder (L = len(terms) for truncated expansions, one
    less for terminated ones).
    """
    ys = [Fraction(x)]
    for n in range(len(e.terms)):
        y = ys[-1]
        t = term_value(e, n)
        if y == t:
            break
        ys.append(Fraction(numerator_after(e, n), 1) / (y - t))
    return ys


class TestTermValidation:
    def test_clog_terms_need_positive_digit(self):
        with pytest.raises(DomainError):
            Term(c=0, a=0)
        with pytest.raises(DomainError):
            Term(c=1, a=-1)
        with pytest.raises(DomainError):
            Term(c=None, a=None)

    def test_gcf_terms_carry_only_the_index(self):
        Term(c=None, a=None, gcf_index=0)
        with pytest.raises(DomainError):
            Term(c=1, a=0, gcf_index=2)
        with pytest.raises(DomainError):
            Term(c=None, a=None, gcf_index=-1)


class TestTermSequence:
    def test_naturals(self):
        seq = naturals()
        assert seq.values(5) == [1, 2, 3, 4, 5]
        assert seq.gap(3) == 1
        assert seq.largest_leq(Fraction(7, 2)) == 2  # c_2 = 3 <= 7/2 < 4

    def test_powers(self):
        seq = powers_of(2)
        assert seq.values(4) == [1, 2, 4, 8]
        assert seq.gap(2) == 4
        assert seq.largest_leq(1000) == 9

    def test_clog_interleaving(self):
        seq = clog_terms(3)
        assert seq.values(8) == [1, 2, 3, 6, 9, 18, 27, 54]
        # gap after any index is the power of 3 of that block
        assert [seq.gap(j) for j in range(6)] == [1, 1, 3, 3, 9, 9]

    def test_clog_base2_is_powers(self):
        assert clog_terms(2).values(6) == powers_of(2).values(6)

    def test_must_start_at_one(self):
        seq = TermSequence(lambda: iter([2, 3, 4]))
        with pytest.raises(DomainError, match="c_0 = 1"):
            seq[0]

    def test_must_increase(self):
        seq = TermSequence(lambda: iter([1, 3, 3]))
        with pytest.raises(DomainError, match="strictly increasing"):
            seq[2]

    def test_finite_generator_is_an_error_past_the_end(self):
        seq = TermSequence(lambda: iter([1, 2, 3]))
        assert seq[2] == 3
        with pytest.raises(DomainError, match="ended before"):
            seq[3]

    def test_non_integer_yield(self):
        seq = TermSequence(lambda: iter([1, 2.5]))
        with pytest.raises(DomainError, match="non-integer"):
            seq[1]

    def test_broken_locate_is_caught(self):
        def gen():
            j = 1
            while True:
                yield j
                j += 1

        seq = TermSequence(gen, locate=lambda y: 0)
        assert seq.largest_leq(1) == 0  # happens to be right at y=1
        with pytest.raises(DomainError, match="misplaced"):
            seq.largest_leq(5)

    def test_largest_leq_domain(self):
        with pytest.raises(DomainError):
            naturals().largest_leq(Fraction(1, 2))

    @settings(max_examples=300, deadline=None)
    @given(
        y=rationals,
        b=st.integers(min_value=2, max_value=6),
    )
    def test_clog_locate_agrees_with_linear_scan(self, y, b):
        fast = clog_terms(b)
        slow = TermSequence(fast._gen)  # same values, no fast path
        assert fast.largest_leq(y) == slow.largest_leq(y)

    def test_sequence_names_round_trip(self):
        for name in ["naturals", "powers:3", "clog:5"]:
            assert sequence_from_name(name).name == name
        with pytest.raises(ParseError):
            sequence_from_name("fibonacci")
        with pytest.raises(ParseError):
            sequence_from_name("powers:x")


class TestWorkedExamples:
    def test_type1_three_halves(self):
        e = expand_type1(Fraction(3, 2), 2)
        assert [(t.c, t.a) for t in e.terms] == [(1, 0), (1, 1)]
        assert e.status is Status.TERMINATED
        assert value(e) == Fraction(3, 2)

    def test_type2_seven_halves_base4(self):
        e = expand_type2(Fraction(7, 2), 4)
        assert [(t.c, t.a) for t in e.terms] == [(3, 0), (1, 1), (2, 0)]
        assert e.status is Status.TERMINATED
        assert value(e) == Fraction(7, 2)

    def test_type3_seven_thirds_base2(self):
        e = expand_type3(Fraction(7, 3), 2)
        assert [(t.c, t.a) for t in e.terms] == [(1, 1), (1, 2), (1, 1)]
        assert convergents(e) == [(2, 1), (10, 4), (28, 12)]
        assert value(e) == Fraction(7, 3)

    def test_gcf_naturals_is_the_simple_continued_fraction(self):
        e = expand_gcf(Fraction(3, 2), naturals())
        assert [t.gcf_index for t in e.terms] == [0, 1]
        assert to_text(e) == "[1; 2]"

    def test_one_is_a_single_term(self):
        for expander in (expand_type1, expand_type2, expand_type3):
            e = expander(1, 2)
            assert [(t.c, t.a) for t in e.terms] == [(1, 0)]
            assert e.status is Status.TERMINATED

    def test_type1_can_cycle_forever(self):
        # 2 = 1 + 1 -> remainder 2/(2-1) = 2 again, in base 3
        e = expand_type1(2, 3, max_terms=50)
        assert len(e.terms) == 50
        assert all((t.c, t.a) == (1, 0) for t in e.terms)
        assert e.status is Status.TRUNCATED_AT_LIMIT

    def test_base2_variants_coincide(self):
        x = Fraction(355, 113)
        t1 = expand_type1(x, 2, max_terms=200)
        t2 = expand_type2(x, 2, max_terms=200)
        t3 = expand_type3(x, 2, max_terms=200)
        assert [(t.c, t.a) for t in t1.terms] == [(t.c, t.a) for t in t3.terms]
        assert [(t.c, t.a) for t in t2.terms] == [(t.c, t.a) for t in t3.terms]


class TestExpandArguments:
    def test_inputs_below_one_are_rejected(self):
        with pytest.raises(DomainError):
            expand_type3(Fraction(1, 2), 2)
        with pytest.raises(DomainError):
            expand_gcf(0, naturals())

    def test_max_terms_bounds(self):
        with pytest.raises(DomainError):
            expand_type2(3, 2, max_terms=0)
        with pytest.raises(DomainError):
            expand_type2(3, 2, max_terms=100_001)

    def test_base_validation(self):
        with pytest.raises(DomainError):
            expand_type1(3, 1)


class TestRoundTrips:
    @settings(max_examples=200, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_type2_terminates_and_reconstructs(self, x, b):
        e = expand_type2(x, b, max_terms=5000)
        assert e.status is Status.TERMINATED
        assert value(e) == x

    @settings(max_examples=200, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_type3_terminates_and_reconstructs(self, x, b):
        e = expand_type3(x, b, max_terms=5000)
        assert e.status is Status.TERMINATED
        assert value(e) == x

    @settings(max_examples=200, deadline=None)
    @given(x=rationals)
    def test_gcf_naturals_terminates_and_reconstructs(self, x):
        e = expand_gcf(x, naturals(), max_terms=5000)
        assert e.status is Status.TERMINATED
        assert value(e) == x

    @settings(max_examples=100, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_powers_sequence_reproduces_type1(self, x, b):
        direct = expand_type1(x, b, max_terms=120)
        via_gcf = expand_gcf(x, powers_of(b), max_terms=120)
        assert direct.status == via_gcf.status
        assert [b ** t.a for t in direct.terms] == [
            term_value(via_gcf, n) for n in range(len(via_gcf.terms))
        ]
        assert convergents(direct) == convergents(via_gcf)

    @settings(max_examples=100, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_clog_sequence_reproduces_type3(self, x, b):
        direct = expand_type3(x, b, max_terms=500)
        via_gcf = expand_gcf(x, clog_terms(b), max_terms=500)
        assert direct.status == via_gcf.status
        assert [t.c * b**t.a for t in direct.terms] == [
            term_value(via_gcf, n) for n in range(len(via_gcf.terms))
        ]
        assert convergents(direct) == convergents(via_gcf)


class TestConvergentStructure:
    @settings(max_examples=200, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_type3_determinant_identity(self, x, b):
        e = expand_type3(x, b, max_terms=400)
        conv = convergents(e)
        exponent_sum = 0
        for n in range(1, len(conv)):
            exponent_sum += e.terms[n - 1].a
            det = conv[n].p * conv[n - 1].q - conv[n].q * conv[n - 1].p
            assert det == (-1) ** (n - 1) * b**exponent_sum

    @settings(max_examples=200, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_type3_denominator_growth(self, x, b):
        e = expand_type3(x, b, max_terms=400)
        conv = convergents(e)
        tail_exponents = 0
        for n, (_, q) in enumerate(conv):
            if n >= 1:
                tail_exponents += e.terms[n].a
            assert q >= b**tail_exponents
            assert 2 * q * q >= 2 ** n  # q_n >= 2^((n-1)/2)

    def test_empty_expansion_has_no_convergents(self):
        e = Expansion(Variant.TYPE3, 2, (), Status.TRUNCATED_AT_LIMIT)
        with pytest.raises(DomainError):
            convergents(e)
        with pytest.raises(DomainError):
            denominator_reduced(e)


class TestRemainders:
    @settings(max_examples=150, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_reconstruction_from_every_remainder(self, x, b):
        e = expand_type3(x, b, max_terms=300)
        ys = replay_remainders(x, e)
        for k in range(1, len(ys)):
            assert reconstruct_from_remainder(e, k, ys[k]) == x

    @settings(max_examples=150, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_type2_reconstruction(self, x, b):
        e = expand_type2(x, b, max_terms=2000)
        ys = replay_remainders(x, e)
        for k in range(1, len(ys)):
            assert reconstruct_from_remainder(e, k, ys[k]) == x

    def test_truncated_boundary_remainder(self):
        # cut the expansion short so the remainder after the last kept term
        # is still finite, then rebuild through the k = len(terms) edge
        x = Fraction(97, 31)
        e = expand_type3(x, 2, max_terms=2)
        assert e.status is Status.TRUNCATED_AT_LIMIT
        ys = replay_remainders(x, e)
        assert len(ys) == 3
        assert reconstruct_from_remainder(e, 2, ys[2]) == x

    @settings(max_examples=150, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_tail_value_matches_replay(self, x, b):
        e = expand_type3(x, b, max_terms=300)
        ys = replay_remainders(x, e)
        for k in range(min(len(ys), len(e.terms))):
            assert tail_value(e, k) == ys[k]

    def test_remainder_argument_checks(self):
        e = expand_type3(Fraction(7, 3), 2)
        with pytest.raises(DomainError):
            reconstruct_from_remainder(e, 0, Fraction(3, 2))
        with pytest.raises(DomainError):
            reconstruct_from_remainder(e, 4, Fraction(3, 2))
        with pytest.raises(DomainError):
            reconstruct_from_remainder(e, 1, Fraction(1, 2))

    def test_tail_value_needs_termination(self):
        e = expand_type1(2, 3, max_terms=10)
        with pytest.raises(DomainError):
            tail_value(e, 1)


class TestDenominatorReduction:
    @settings(max_examples=150, deadline=None)
    @given(x=rationals, b=small_bases)
    def test_partial_quotients_match_convergents(self, x, b):
        e = expand_type3(x, b, max_terms=200)
        pairs = denominator_reduced(e)
        conv = convergents(e)
        assert len(pairs) == len(conv)
        assert all(denom == 1 for _, denom in pairs)
        for depth in range(len(pairs)):
            assert evaluate_partial_quotients(pairs, depth) == Fraction(*conv[depth])

    def test_gcf_form_too(self):
        x = Fraction(103, 7)
        e = expand_gcf(x, clog_terms(3), max_terms=100)
        pairs = denominator_reduced(e)
        assert evaluate_partial_quotients(pairs) == x

    def test_depth_checks(self):
        pairs = denominator_reduced(expand_type3(Fraction(7, 3), 2))
        with pytest.raises(DomainError):
            evaluate_partial_quotients(pairs, depth=3)
        with pytest.raises(DomainError):
            evaluate_partial_quotients([], depth=0)


class TestPrecisionGuard:
    def test_first_term_is_always_granted(self):
        e = expand_type3(2**40 + 1, 2, guard=PrecisionGuard(input_digits=1))
        assert len(e.terms) == 1
        assert e.status is Status.PRECISION_EXHAUSTED

    def test_generous_budget_changes_nothing(self):
        x = Fraction(355, 113)
        free = expand_type3(x, 2, max_terms=200)
        guarded = expand_type3(x, 2, max_terms=200, guard=PrecisionGuard(input_digits=500))
        assert free == guarded

    def test_budget_cuts_off_low_precision_input(self):
        # 12 significant digits of sqrt(2): the guard should stop well short
        # of the 64-term default rather than invent digits
        x = Fraction(141421356237, 10**11)
        guard = PrecisionGuard(input_digits=12)
        e = expand_type3(x, 2, guard=guard)
        assert e.status is Status.PRECISION_EXHAUSTED
        assert 5 <= len(e.terms) <= 25

    def test_gcf_guard(self):
        e = expand_gcf(Fraction(10**12 + 1, 10**12), naturals(), guard=PrecisionGuard(input_digits=2))
        assert e.status is Status.PRECISION_EXHAUSTED


class TestSerialization:
    def test_clog_json_round_trip(self):
        e = expand_type2(Fraction(7, 2), 4)
        d = to_json_dict(e)
        assert d == {
            "variant": "TypeII",
            "base": 4,
            "terms": [{"c": 3, "a": 0}, {"c": 1, "a": 1}, {"c": 2, "a": 0}],
            "status": "Terminated",
        }
        assert from_json_dict(d) == e

    def test_gcf_json_round_trip(self):
        e = expand_gcf(Fraction(3, 2), naturals())
        d = to_json_dict(e)
        assert d["base"] == "naturals"
        assert d["terms"] == [{"j": 0}, {"j": 1}]
        back = from_json_dict(d)
        assert back.variant is Variant.GCF
        assert [t.gcf_index for t in back.terms] == [0, 1]
        assert value(back) == Fraction(3, 2)

    def test_malformed_dicts(self):
        with pytest.raises(ParseError):
            from_json_dict({"variant": "TypeIX", "base": 2, "terms": [], "status": "Terminated"})
        with pytest.raises(ParseError):
            from_json_dict({"variant": "TypeI", "base": 2, "terms": []})

    def test_text_forms(self):
        assert to_text(expand_type1(Fraction(3, 2), 2)) == "[1*2^0; 1*2^1]"
        assert to_text(expand_type1(1, 2)) == "[1*2^0]"
        assert to_text(expand_type2(Fraction(7, 2), 4)) == "[3*4^0; 1*4^1, 2*4^0]"
        assert to_text(Expansion(Variant.TYPE3, 2, (), Status.TRUNCATED_AT_LIMIT)) == "[]"
