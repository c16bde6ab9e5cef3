"""Shared randomized instance suite for the property and acceptance tests.

Instances are random acyclic quivers on at most 4 vertices with at most 2
parallel arrows, alpha and beta entries at most 3 and <alpha, beta> = 0.
A cost filter keeps the exact and Monte Carlo computations at desk scale.
"""

from functools import lru_cache

from qsi.conjectures import Instance, random_instances
from qsi.quiver import sigma_beta
from qsi.semi_invariants import si_dim_cauchy

SUITE_SEED = 20240601
MAX_PAIRING = 14  # sum_x alpha(x) beta(x): side length of d^V_W at n = 1
MAX_REP_DIM = 30
MAX_DIM_AT_2 = 30  # oracle sample count grows with the dimension it must certify


def pairing(inst: Instance) -> int:
    return sum(inst.alpha[x] * inst.beta[x] for x in inst.quiver.vertices)


def cheap(inst: Instance) -> bool:
    if pairing(inst) > MAX_PAIRING or inst.quiver.rep_dimension(inst.alpha) > MAX_REP_DIM:
        return False
    return si_value(inst, 2) <= MAX_DIM_AT_2


@lru_cache(maxsize=None)
def instance_suite(count: int = 60, seed: int = SUITE_SEED) -> tuple[Instance, ...]:
    """`count` instances with some alpha entries allowed to be 0, then `count`
    with alpha > 0 everywhere (these carry most of the nontrivial tables)."""
    mixed = random_instances(count, seed=seed, accept=cheap)
    positive = random_instances(count, seed=seed + 1, accept=cheap, zero_alpha=False)
    return tuple(mixed + positive)


def si_value(inst: Instance, n: int) -> int:
    q = inst.quiver
    return si_dim_cauchy(q, inst.alpha, n * sigma_beta(q, inst.beta))


def random_flag_problems(count: int, seed: int = SUITE_SEED, s: int = 3, max_r: int = 4, max_ell: int = 5):
    """Valid flag problems (r*ell = sum |lam^p|), drawn by rejection."""
    import random

    from qsi.flags import FlagProblem
    from qsi.partitions import partitions_of

    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        r, ell = rng.randint(2, max_r), rng.randint(1, max_ell)
        total = r * ell
        sizes = [rng.randint(0, min(total, (r - 1) * ell)) for _ in range(s - 1)]
        last = total - sum(sizes)
        sizes.append(last)
        if last < 0 or last > (r - 1) * ell:
            continue
        lambdas = tuple(rng.choice(list(partitions_of(n, r - 1, ell)) or [None]) for n in sizes)
        if None in lambdas or (r, ell, lambdas) in seen:
            continue
        seen.add((r, ell, lambdas))
        out.append(FlagProblem(r, ell, lambdas))
    return out
