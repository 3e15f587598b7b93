"""Square and cube occurrence counts in prefixes of length T_n: representations and fits."""
from tribauto.corpus import CaseContext
from tribauto.corpus.cases import CUBE_OCCURRENCES, SQUARE_OCCURRENCES, occurrence_linrep
from tribauto.corpus.oracles import occurrence_count
from tribauto.enumeration import (BASIS_MOD3, Polynomial, annihilates, fit_closed_form,
                                  minimize_linrep, values_at_tribonacci)
from tribauto.numeration import tribonacci

x, one = Polynomial.x(), Polynomial((1,))
core = (x - one) ** 2 * (x ** 2 + x + one) ** 2 * (x ** 3 - x ** 2 - x - one) ** 2

ctx = CaseContext()
for name, query, power, start in (("square_occ", SQUARE_OCCURRENCES, 2, 5),
                                  ("cube_occ", CUBE_OCCURRENCES, 3, 3)):
    ctx.compile(name, query)
    r = occurrence_linrep(ctx, name)
    m = minimize_linrep(r)
    vals = values_at_tribonacci(r, range(start, 60))
    fit = fit_closed_form(vals, BASIS_MOD3, fit_window=20)
    print(f"{name}: rank {r.rank} (minimal {m.rank})")
    print("  fit:", fit.form if fit else fit.message)
    for k in range(8):
        if annihilates(x ** k * core, r.M0):
            print(f"  x^{k} * core annihilates M0; on the minimal M0 from k =",
                  next(j for j in range(8) if annihilates(x ** j * core, m.M0)))
            break
    for n in range(start, 13):
        print(f"  n={n:>2}  T_n={tribonacci(n):>4}  count={vals[n]:>5}  "
              f"brute={occurrence_count(tribonacci(n), power):>5}")
