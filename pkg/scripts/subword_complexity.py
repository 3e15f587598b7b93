"""Count novel factors and compare the resulting series with 2n + 1."""
import argparse
import time

from tribauto.corpus import CaseContext
from tribauto.corpus.cases import SUBWORD_COMPLEXITY
from tribauto.enumeration import affine_linrep, linrep_equal, linrep_from_dfa, minimize_linrep

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--save", help="write the minimized representation here")
args = ap.parse_args()

t0 = time.perf_counter()
p = CaseContext().compile("novel", SUBWORD_COMPLEXITY)
print(p.format_log().splitlines()[-2].strip())
raw = linrep_from_dfa(p.dfa, ["i"], "n")
r = minimize_linrep(raw)
print(f"rank {raw.rank} -> {r.rank}; first values {r.eval_range(12)}")
print("equal to 2n+1:", bool(linrep_equal(r, affine_linrep(2, 1))))
print(f"{time.perf_counter() - t0:.1f}s, largest intermediate {p.peak}")
if args.save:
    with open(args.save, "w") as f:
        f.write(r.dumps())
