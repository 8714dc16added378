"""Acceptance gate: twelve criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import random
import sys
import time
from functools import lru_cache

import pytest

from homotopes.algebra import (LEFT, RIGHT, Element, find_unit, homotope, is_well_tempered_criterion,
                               matrix_algebra, mult_operator)
from homotopes.experiments import (commutative_trials, fiber_trial, functoriality_trial,
                                   rank_representative, recollement_instances, recollement_trial,
                                   run_oracle, split_trial)
from homotopes.linalg import GF, QQ, rank
from homotopes.modules import augmentation_modules, is_projective
from homotopes.nonassoc import (generic_preimage_instance, genericity_density, homotope_preimages,
                                kaplansky_unitalize, random_tensor, same_tensor)

ORACLE_SEED = "acceptance"
ORACLE_TRIALS = 200
SPLIT_TRIALS = 60


@lru_cache(maxsize=None)
def oracle_run():
    t0 = time.perf_counter()
    trials = run_oracle(ORACLE_TRIALS, ORACLE_SEED, max_dim=8, field=QQ)
    return trials, time.perf_counter() - t0


@lru_cache(maxsize=None)
def split_run():
    return [split_trial(ORACLE_SEED, t) for t in range(SPLIT_TRIALS)]


def criterion_1():
    trials, seconds = oracle_run()
    agree = sum(t.agree for t in trials)
    ok = agree == len(trials) >= 200 and all(t.dim <= 8 for t in trials) and seconds <= 120
    return ok, "%d/%d agree, %d well-tempered, %.1f s" % (agree, len(trials), sum(t.criterion for t in trials), seconds)


def criterion_2():
    bad = []
    for n in (1, 2, 3):
        M = matrix_algebra(n)
        for r in range(n + 1):
            d = rank_representative(M, n, r)
            mods = augmentation_modules(M, d)
            wt = is_well_tempered_criterion(M, d) and is_projective(mods.B_plus_left) \
                and is_projective(mods.B_plus_right)
            if wt != (r > 0):
                bad.append((n, r))
    return not bad, "10 rank representatives, mismatches %s" % bad


def criterion_3():
    trials = commutative_trials(seed=0, randoms=20)
    agree = sum(t.agree for t in trials)
    return agree == len(trials), "%d/%d elements agree" % (agree, len(trials))


def criterion_4():
    trials = split_run()
    ok = sum(t.dimension_identity for t in trials)
    return ok == len(trials) >= 50, "%d/%d instances satisfy dim B - dim R(B) = 1 + sum r_i^2" % (ok, len(trials))


def criterion_5():
    trials = split_run()
    contained = sum(t.contained for t in trials)
    exact = sum(t.radical_identity for t in trials)
    return exact == len(trials), "containment %d/%d, equality iff invertible %d/%d" % (
        contained, len(trials), exact, len(trials))


def criterion_6():
    trials, _ = oracle_run()
    agree = sum(t.ext_agree and t.ext1 is not None for t in trials)
    return agree == len(trials), "%d/%d instances: Ext^1(k, k) = 0 iff well-tempered" % (agree, len(trials))


def criterion_7():
    insts = recollement_instances(20, ORACLE_SEED, max_dim=7)
    failures = []
    samples = []
    for k, (A, delta) in enumerate(insts):
        rep = recollement_trial(A, delta, "%s/%d" % (ORACLE_SEED, k))
        n_a = sum(c.name.startswith("shriek") for c in rep.checks)
        samples.append(n_a)
        if not rep.all_passed or n_a < 3:
            failures.append((k, [c.name for c in rep.failed()]))
    ok = len(insts) >= 20 and not failures
    return ok, "%d well-tempered instances, >= %d A-samples each, failures %s" % (
        len(insts), min(samples) if samples else 0, failures)


def criterion_8():
    F = GF(101)
    counts = {}
    ok = True
    for d in (2, 3):
        inst = generic_preimage_instance(d, F, 0)
        pre = homotope_preimages(inst.mp, inst.v)
        counts[d] = len(pre)
        ok = ok and len(pre) == 2 ** d
        for m in pre:
            ok = ok and same_tensor(homotope(m, Element._raw(m, inst.v.coords), RIGHT), inst.mp)
        ok = ok and all(not same_tensor(pre[i], pre[j]) for i in range(len(pre)) for j in range(i))
    return ok, "preimages d=2: %d, d=3: %d" % (counts[2], counts[3])


def criterion_9():
    r = genericity_density(3, GF(101), 200, ORACLE_SEED)
    ok = min(r.frac_l_invertible, r.frac_r_invertible, r.frac_simple_left, r.frac_simple_right) >= 0.95
    return ok, "l_v %.3f, r_v %.3f, left-simple %.3f, right-simple %.3f" % (
        r.frac_l_invertible, r.frac_r_invertible, r.frac_simple_left, r.frac_simple_right)


def criterion_10():
    rng = random.Random("kaplansky/%s" % ORACLE_SEED)
    done = good = 0
    s = 0
    while done < 50:
        d = rng.randint(1, 4)
        m = random_tensor(d, QQ, "kaplansky/%d" % s)
        s += 1
        a = Element._raw(m, [QQ.random(rng) for _ in range(d)])
        b = Element._raw(m, [QQ.random(rng) for _ in range(d)])
        if rank(mult_operator(m, a, LEFT)) < d or rank(mult_operator(m, b, RIGHT)) < d:
            continue
        done += 1
        u = find_unit(kaplansky_unitalize(m, a, b))
        good += u is not None and u.coords == tuple(m.product_coords(a.coords, b.coords))
    return good == done, "%d/%d unit equals m(a, b)" % (good, done)


def criterion_11():
    trials = [fiber_trial(ORACLE_SEED, t) for t in range(30)]
    ident = sum(t.identity_free and t.identity_glued for t in trials)
    surj = sum(t.unit_surjective for t in trials)
    kern = sum(t.kernel_matches_quotient for t in trials)
    ann = sum(t.kernel_matches_annihilator for t in trials)
    ok = ident == surj == kern == len(trials)
    return ok, ("Psi Psi' = Id %d/%d, unit surjective %d/%d, kernel = dim A/I - 1 %d/%d "
                "(kernel = dim Au - dim Bu %d/%d)" % (ident, len(trials), surj, len(trials), kern,
                                                      len(trials), ann, len(trials)))


def criterion_12():
    trials = [functoriality_trial(ORACLE_SEED, t) for t in range(50)]
    ok = sum(t.ok for t in trials)
    return ok == len(trials), "%d/%d triples (A, I, a)" % (ok, len(trials))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
             criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def line(k, ok, detail):
    return "criterion %2d: %s  %s" % (k, "PASS" if ok else "FAIL", detail)


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        sys.stdout.write("\n" + line(k, ok, detail) + "\n")
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, f in enumerate(CRITERIA, 1):
        ok, detail = f()
        results.append(ok)
        print(line(k, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
