#!/usr/bin/env python3
"""Walk through the exact polynomial machinery.

The double sinh-Gordon well (zeta*cosh 2x - M)^2 turns the Schroedinger
equation into a three-term recursion for monic polynomials in the shifted
energy E - (M+zeta)^2.  Everything below is computed in exact rational
arithmetic, so "equal" means identical coefficients, not close floats.
"""

from fractions import Fraction

from qespoly import (
    ChainSpec,
    finkel_form,
    gen_R,
    gen_family,
    gen_quotient,
    poly_divide_exact,
    three_term_form,
)

HALF = Fraction(1, 2)


def banner(text):
    print()
    print("=" * 72)
    print(text)
    print("=" * 72)


banner("The two chains at M = 3 (even nodes: P with s=0, odd nodes: Q with s=1/2)")
p = gen_family(ChainSpec("P", Fraction(3), Fraction(0)), 4)
for n, poly in enumerate(p.members):
    print(f"  P_{n} = {poly.render()}")
print(f"  termination index (first vanishing lag coefficient): {p.termination_index}")

q = gen_family(ChainSpec("Q", Fraction(3), HALF), 3)
for n, poly in enumerate(q.members):
    print(f"  Q_{n} = {poly.render()}")

banner("Factorization: every member past the critical one divides exactly")
crit = 2  # P_2 carries the even-node QES levels for M = 3
for n in (3, 4):
    quo, rem = poly_divide_exact(p[n], p[crit])
    print(f"  P_{n} / P_{crit}: quotient = {quo.render()}")
    print(f"            remainder identically zero: {rem.is_zero()}")
pbar = gen_quotient(ChainSpec("Pbar", Fraction(3), Fraction(0)), 2)
print("  quotient chain reproduces the same cofactors:")
for n in (1, 2):
    print(f"  Pbar_{n} = {pbar[n].render()}")

banner("The combined chain R interleaves P and Q exactly")
r = gen_R(ChainSpec("R", Fraction(3), Fraction(0)), 7)
pp = gen_family(ChainSpec("P", Fraction(3), Fraction(0)), 3)
qq = gen_family(ChainSpec("Q", Fraction(3), Fraction(0)), 3)
for n in range(4):
    print(f"  R_{2*n} == P_{n}: {r[2*n] == pp[n]}   R_{2*n+1} == Q_{n}: {r[2*n+1] == qq[n]}")

banner("Three-term data and the positivity criterion")
form = three_term_form(gen_family(ChainSpec("P", Fraction(5), Fraction(0)), 6))
print(f"  first identically-zero lag coefficient: n = {form.first_zero_C}")
fin = finkel_form(form, zeta=1.0)
print(f"  a_k sequence at zeta=1: {[f'{a:.0f}' for a in fin.a]}")
print(f"  signs before termination: {fin.a_signs_before_termination}")
print("  every a_k < 0, so positive weights are impossible for the main chains;")
fin_bar = finkel_form(three_term_form(gen_quotient(
    ChainSpec("Pbar", Fraction(5), Fraction(0)), 6)), zeta=1.0)
print(f"  the quotient chain flips the pattern: {fin_bar.a_signs_before_termination}")
