"""Projectivity of B^+ against A delta A = A over many seeded instances.

Prints one line per profile and lists every disagreement.
"""
import argparse
import time
from collections import Counter

from homotopes.experiments import run_oracle
from homotopes.linalg import FieldSpec


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", default="sweep")
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--field", type=FieldSpec.from_string, default=FieldSpec())
    args = p.parse_args()

    t0 = time.perf_counter()
    trials = run_oracle(args.trials, args.seed, args.max_dim, args.field)
    elapsed = time.perf_counter() - t0
    total, wt, agree = Counter(), Counter(), Counter()
    for t in trials:
        total[t.profile] += 1
        wt[t.profile] += t.criterion
        agree[t.profile] += t.agree and t.ext_agree
    print("%-26s %6s %6s %6s" % ("profile", "trials", "wt", "agree"))
    for prof in sorted(total):
        print("%-26s %6d %6d %6d" % (prof, total[prof], wt[prof], agree[prof]))
    print("elapsed %.1f s" % elapsed)
    for t in trials:
        if not (t.agree and t.ext_agree):
            print("disagreement", t)


if __name__ == "__main__":
    main()
