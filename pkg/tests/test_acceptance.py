"""Acceptance criteria 1-9, one test per criterion.

Each test prints a PASS/FAIL line; the conftest collects them into a
summary section at the end of the run.
"""

import random
import subprocess
import sys
import time
from functools import lru_cache

import pytest

from qsi.conjectures import check_fulton, check_polynomial_consistency, check_saturation, random_instance
from qsi.flags import FlagProblem, verify_translation
from qsi.lr import lr_coefficient, stretched_lr
from qsi.quiver import Quiver, evaluate_weight, ringel_form, sigma_beta
from qsi.reps import check_ext_descent, ext_dim, hom_dim, random_representation
from qsi.semi_invariants import si_dim_cauchy, si_dim_eval_oracle, stretch_function
from oracles import lr_oracle
from suite import instance_suite, random_flag_problems

KRONECKER = Quiver.from_edges(2, [(1, 2), (1, 2)])
N = 6
POLY_MAX_DEGREE = 12  # criterion 8 runs instances with dim Rep(Q, alpha) up to this


def report(record_property, n, ok, detail):
    record_property("detail", detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


@lru_cache(maxsize=None)
def suite_table(i: int):
    """Stretch table long enough for criterion 8 when dim Rep is small, else n = 1..6."""
    inst = instance_suite()[i]
    d = inst.quiver.rep_dimension(inst.alpha)
    length = max(N, d + 2) if d <= POLY_MAX_DEGREE else N
    return stretch_function(inst.quiver, inst.alpha, inst.beta, length).values


def test_criterion_1_kronecker_witness(record_property):
    start = time.perf_counter()
    alpha, beta = KRONECKER.dimvec([1, 1]), KRONECKER.dimvec([1, 1])
    sigma = sigma_beta(KRONECKER, beta)
    cauchy = [si_dim_cauchy(KRONECKER, alpha, n * sigma) for n in range(1, N + 1)]
    oracle = [si_dim_eval_oracle(KRONECKER, alpha, n * beta, seed=n) for n in range(1, N + 1)]
    elapsed = time.perf_counter() - start
    expected = [n + 1 for n in range(1, N + 1)]
    ok = cauchy == oracle == expected and elapsed < 5
    report(record_property, 1, ok, f"cauchy={cauchy} oracle={oracle} in {elapsed:.2f}s")
    assert cauchy == expected
    assert oracle == expected
    assert elapsed < 5


def test_criterion_2_lr_ktt_instance(record_property):
    start = time.perf_counter()
    values = [stretched_lr((2, 1), (2, 1), (3, 2, 1), n) for n in range(1, N + 1)]
    elapsed = time.perf_counter() - start
    # independent Schur-polynomial count for the first stretches
    ref = [lr_oracle((2 * n, n), (2 * n, n), (3 * n, 2 * n, n)) for n in (1, 2, 3)]
    ok = values == [n + 1 for n in range(1, N + 1)] and ref == values[:3] and elapsed < 10
    report(record_property, 2, ok, f"P(n)={values} oracle(1..3)={ref} in {elapsed:.2f}s")
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert values == [n + 1 for n in range(1, N + 1)]
    assert ref == values[:3]
    assert elapsed < 10


def test_criterion_3_oracle_equivalence(record_property):
    suite = instance_suite()
    disagreements = []
    nontrivial = 0
    for i, inst in enumerate(suite):
        q = inst.quiver
        for n in (1, 2):
            c = si_dim_cauchy(q, inst.alpha, n * sigma_beta(q, inst.beta))
            o = si_dim_eval_oracle(q, inst.alpha, n * inst.beta, seed=1000 * i + n)
            nontrivial += c > 1
            if c != o:
                disagreements.append((i, n, c, o))
    ok = len(suite) >= 50 and not disagreements
    report(record_property, 3, ok,
           f"{len(suite)} instances x n=1,2, {nontrivial} values > 1, {len(disagreements)} disagreements")
    assert len(suite) >= 50
    assert not disagreements


def test_criterion_4_translation_identity(record_property):
    named = [FlagProblem(4, 5, ((5, 2, 1), (4, 2), (4, 2))), FlagProblem(3, 3, ((2, 1), (2, 1), (2, 1)))]
    problems = named + [fp for fp in random_flag_problems(12) if fp not in named]
    failures = []
    for fp in problems:
        assert fp.r <= 4 and fp.ell <= 5 and fp.s == 3
        for n in (1, 2, 3):
            r = verify_translation(fp, n)
            if not r.equal:
                failures.append((fp.to_json(), n, r.quiver_dim, r.tensor_dim))
    triple = [verify_translation(named[1], n).quiver_dim for n in (1, 2, 3)]
    ok = len(problems) >= 10 and not failures and triple == [2, 3, 4]
    report(record_property, 4, ok, f"{len(problems)} problems x n=1..3, (2,1)^3 gives {triple}, "
                                   f"{len(failures)} mismatches")
    assert len(problems) >= 10
    assert not failures
    assert triple == [2, 3, 4]


def test_criterion_5_ext_descent(record_property):
    rng = random.Random(5)
    checked, with_ext, violations = 0, 0, []
    while checked < 150:
        inst = random_instance(rng)
        q = inst.quiver
        beta = q.dimvec([rng.randint(0, 3) for _ in q.vertices])
        rep = check_ext_descent(q, inst.alpha, beta, seed=rng.getrandbits(32))
        if rep.no_morphism or not rep.generic:
            continue
        checked += 1
        with_ext += rep.ext_vw > 0
        if not rep.equal:
            violations.append(rep.to_json())
    ok = checked >= 100 and not violations
    report(record_property, 5, ok, f"{checked} generic pairs with Hom != 0 ({with_ext} with ext > 0), "
                                   f"{len(violations)} violations")
    assert checked >= 100
    assert not violations


def test_criterion_6_exact_identities(record_property):
    rng = random.Random(6)
    bad_form = bad_sigma = 0
    for _ in range(1000):
        inst = random_instance(rng, max_entry=3)
        q = inst.quiver
        a = q.dimvec([rng.randint(0, 3) for _ in q.vertices])
        b = q.dimvec([rng.randint(0, 3) for _ in q.vertices])
        v = random_representation(q, a, rng, bound=rng.choice([1, 2, 10]))
        w = random_representation(q, b, rng, bound=rng.choice([1, 2, 10]))
        bad_form += hom_dim(v, w) - ext_dim(v, w) != ringel_form(q, a, b) or ext_dim(v, w) < 0
    for _ in range(1000):
        inst = random_instance(rng)
        q = inst.quiver
        a = q.dimvec([rng.randint(0, 5) for _ in q.vertices])
        b = q.dimvec([rng.randint(0, 5) for _ in q.vertices])
        n = rng.randint(1, 50)
        sb = sigma_beta(q, b)
        bad_sigma += sigma_beta(q, n * b) != n * sb or evaluate_weight(sb, a) != -ringel_form(q, a, b)
    ok = bad_form == 0 and bad_sigma == 0
    report(record_property, 6, ok, f"1000 hom-ext pairs: {bad_form} failures; "
                                   f"1000 sigma linearity/duality: {bad_sigma} failures")
    assert bad_form == 0
    assert bad_sigma == 0


def test_criterion_7_saturation_fulton(record_property):
    suite = instance_suite()
    counts = {0: 0, 1: 0}
    violations = []
    for i in range(len(suite)):
        values = suite_table(i)[:N]
        for check in (check_saturation, check_fulton):
            v = check(values)
            if not v.holds:
                violations.append((i, v.behavior, values))
        if values[0] in counts:
            counts[values[0]] += 1
    ok = not violations and counts[0] > 0 and counts[1] > 0
    report(record_property, 7, ok, f"{counts[0]} tables with P(1)=0, {counts[1]} with P(1)=1 up to N={N}, "
                                   f"{len(violations)} violations")
    assert not violations
    assert counts[0] > 0 and counts[1] > 0


def test_criterion_8_polynomial_consistency(record_property):
    suite = instance_suite()
    checked, skipped, violations = 0, 0, []
    for i, inst in enumerate(suite):
        d = inst.quiver.rep_dimension(inst.alpha)
        if d > POLY_MAX_DEGREE:
            skipped += 1
            continue
        v = check_polynomial_consistency(suite_table(i), d)
        checked += 1
        if not v.holds:
            violations.append((i, v.details))
    ok = not violations and checked >= 50
    report(record_property, 8, ok, f"{checked} tables at degree bound dim Rep (N = dim Rep + 2), "
                                   f"{skipped} with dim Rep > {POLY_MAX_DEGREE} not run, {len(violations)} violations")
    assert not violations
    assert checked >= 50


def test_criterion_9_search_determinism(record_property):
    cmd = [sys.executable, "-m", "qsi.cli", "search", "--seed", "9"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    lines = first.stdout.decode().splitlines()
    ok = first.returncode == second.returncode == 0 and first.stdout == second.stdout and len(lines) > 0
    report(record_property, 9, ok, f"{len(lines)} JSON lines, byte-identical={first.stdout == second.stdout}")
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    assert lines
