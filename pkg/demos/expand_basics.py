"""
A first tour of base-b continued logarithms
===========================================

Expand a handful of rationals in all three types, plus the generalized
continued fraction built from an arbitrary increasing term sequence, and
watch where they agree and where they split apart.
"""

from fractions import Fraction

from clogkit import (
    Status,
    clog_terms,
    expand_gcf,
    expand_type1,
    expand_type2,
    expand_type3,
    naturals,
    to_text,
    value,
)

# Every term of a type III expansion is a digit c in 1..b-1 times a power
# b**a; type I pins c = 1, type II lets the digit ride along in the
# recursive numerator.  At base 2 the digit can only be 1, so all three
# types collapse onto Gosper's original continued logarithm.
x = Fraction(355, 113)
print(f"x = {x}  (~{float(x):.6f})")
for label, e in [
    ("type I,  base 2", expand_type1(x, 2)),
    ("type II, base 2", expand_type2(x, 2)),
    ("type III, base 2", expand_type3(x, 2)),
]:
    print(f"  {label}: {to_text(e)}")

# In a larger base they genuinely differ.  Types II and III terminate on
# every rational; type I usually does not (its only move is to subtract a
# bare power of 10), so its truncation is merely a good approximation.
print()
print("same x, base 10:")
for label, e in [
    ("type II ", expand_type2(x, 10)),
    ("type III", expand_type3(x, 10)),
]:
    print(f"  {label}: {to_text(e)}  -> value {value(e)} ({e.status.value})")
e1 = expand_type1(x, 10, max_terms=40)
print(f"  type I : 40 terms and counting ({e1.status.value}); "
      f"truncation off by {float(value(e1) - x):.2e}")

# The generalized construction takes any strictly increasing sequence of
# candidate terms starting at 1.  The naturals give plain continued
# fractions; powers of b give type I back; the digit-times-power sequence
# gives type III back.
print()
print("generalized expansions of 3/2:")
for label, seq in [("naturals", naturals()), ("clog base 3", clog_terms(3))]:
    e = expand_gcf(Fraction(3, 2), seq)
    print(f"  over {label}: {to_text(e)}")

# Termination is a property of the type, not just of the number.  The
# integer 2 ends immediately in type III base 3 (2 = 2 * 3**0 is a single
# term), but type I can only subtract 1 * 3**0 and the remainder recursion
# cycles forever on the same term.
print()
cycling = expand_type1(2, 3, max_terms=12)
finished = expand_type3(2, 3)
print(f"type III of 2, base 3: {to_text(finished)} ({finished.status.value})")
print(f"type I of 2, base 3: {to_text(cycling)} ... ({cycling.status.value})")
assert cycling.status is Status.TRUNCATED_AT_LIMIT
