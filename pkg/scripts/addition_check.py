"""Check the addition table exhaustively on a box and by sampled wrong sums."""
import argparse
import time

from tribauto.corpus import check_addition
from tribauto.numeration import addition_dfa, canonical_addition_dfa, tribonacci_system

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--bound", type=int, default=2000)
ap.add_argument("--samples", type=int, default=100)
ap.add_argument("--canonical", action="store_true", help="check the minimized canonical relation")
args = ap.parse_args()

ns = tribonacci_system()
a = canonical_addition_dfa() if args.canonical else addition_dfa()
t0 = time.perf_counter()
res = check_addition(a, ns, bound=args.bound, samples=args.samples)
print(f"{a.num_states} states ({a.live_count()} live)")
print(f"{res.pairs} pairs, exact: {res.exact}; {res.sampled} wrong sums, all rejected: "
      f"{res.sampled_rejected}; {time.perf_counter() - t0:.1f}s")
if res.witness is not None:
    print("witness", res.witness)
