"""Kernel of the unit V -> Psi' Psi(V) for V = B/(u) over fiber products A x_{A/I} k.

For each instance prints the kernel dimension next to dim A/I - 1 and
dim Au - dim Bu, and whether the annihilator of u lies in k + I.
"""
import argparse

from homotopes import fiber as fb
from homotopes.experiments import fiber_instance
from homotopes.linalg import Matrix, kernel_basis, span


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--seed", default="acceptance")
    args = p.parse_args()

    print("%4s %4s %4s %7s %10s %9s %13s" % ("k", "dimA", "dimI", "kernel", "dimA/I-1", "Au-Bu", "Ann(u)<=k+I"))
    hits = [0, 0]
    for k in range(args.trials):
        A, I, g, u = fiber_instance(args.seed, k)
        fp = fb.fiber_product(A, I)
        V = fb.cyclic_ideal_quotient(fp, u)
        kern = len(fb.unit_kernel(fp, V))
        au, bu = fb.annihilator_formula(fp, u)
        L = Matrix.from_columns([(A.basis(i) * u).coords for i in range(A.dim)], A.field, A.dim)
        base = span([A.one().coords] + list(I), A.dim, A.field)
        inside = all(base.contains(v) for v in kernel_basis(L))
        hits[0] += kern == A.dim - len(I) - 1
        hits[1] += kern == au - bu
        print("%4d %4d %4d %7d %10d %9d %13s" % (k, A.dim, len(I), kern, A.dim - len(I) - 1, au - bu, inside))
    print("kernel = dim A/I - 1: %d/%d, kernel = dim Au - dim Bu: %d/%d" % (hits[0], args.trials, hits[1], args.trials))


if __name__ == "__main__":
    main()
