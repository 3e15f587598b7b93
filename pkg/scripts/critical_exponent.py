"""Longest factors with period T_j, their ratios, and the initial critical exponent."""
from fractions import Fraction

from tribauto.corpus import CaseContext, CASES_BY_ID
from tribauto.corpus.cases import CRITICAL_EXPONENT, initial_exponents, max_period_lengths
from tribauto.numeration import tribonacci

ctx = CaseContext()
for case in (12, 13):
    for name, query in CASES_BY_ID[case].queries:
        ctx.compile(name, query)

U = max_period_lengths(ctx, range(2, 31))
for j in range(2, 31):
    print(f"j={j:>2}  T_j={tribonacci(j):>9}  U_j={U[j]:>10}  U_j/T_j={float(Fraction(U[j], tribonacci(j))):.15f}")
x = Fraction(U[30], tribonacci(30))
print("U_30/T_30 - rho =", float(x - Fraction(CRITICAL_EXPONENT)))
print("2x^3-12x^2+22x-13 at U_30/T_30:", float(2 * x ** 3 - 12 * x ** 2 + 22 * x - 13))
ice = max(v for v in initial_exponents(ctx, range(2, 31)).values() if v is not None)
print("initial critical exponent estimate:", float(ice), "vs rho - 1 =",
      float(Fraction(CRITICAL_EXPONENT) - 1))
