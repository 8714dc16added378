"""Monte Carlo fractions of generic behaviour for random multiplication tensors."""
import argparse

from homotopes.linalg import GF
from homotopes.nonassoc import genericity_density


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d", type=int, nargs="+", default=[2, 3])
    p.add_argument("--p", type=int, nargs="+", default=[5, 101])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", default="genericity")
    args = p.parse_args()

    print("%3s %5s %8s %8s %8s %8s %6s" % ("d", "p", "l_inv", "r_inv", "simpleL", "simpleR", "incon"))
    for d in args.d:
        for prime in args.p:
            r = genericity_density(d, GF(prime), args.samples, args.seed)
            print("%3d %5d %8.3f %8.3f %8.3f %8.3f %6d" % (d, prime, r.frac_l_invertible, r.frac_r_invertible,
                                                          r.frac_simple_left, r.frac_simple_right,
                                                          r.counts["inconclusive"]))


if __name__ == "__main__":
    main()
