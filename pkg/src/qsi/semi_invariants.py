"""Dimensions of weight spaces of semi-invariants SI(Q, alpha)_sigma.

Two independent routes:

si_dim_cauchy
    The coordinate ring of Rep(Q, alpha) is the tensor product over arrows of
    Sym(V_ta (x) V_ha^*) = sum over lam of S_lam(V_ta) (x) S_lam(V_ha)^*
    (Cauchy formula, l(lam) <= min(alpha(ta), alpha(ha))). A function of weight
    sigma lives in the det^sigma(x) isotypic part at every vertex x, where the
    module is the product of S_lam(V_x) over arrows leaving x and S_mu(V_x)^*
    over arrows entering x. Degrees balance as
        sum_out |lam| - sum_in |mu| = sigma(x) * alpha(x).
    With this convention sigma_beta is positive on tails, which makes the
    coordinate functions of the Kronecker quiver have weight sigma_beta for
    beta = (1, 1).

si_dim_eval_oracle
    Rank of the evaluation matrix [det d^{V_j}_{W_i}] over random V_j, W_i.
    The functions V -> det d^V_W span SI(Q, alpha)_{sigma_beta}, so the rank is a
    lower bound that is exact with high probability once enough samples are
    drawn.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import lru_cache

from qsi.errors import NotOrthogonal
from qsi.linalg import det_mod, determinant, rank, rank_mod, random_prime, ExactMatrix
from qsi.lr import rectangle_mult_raw
from qsi.partitions import Partition, partition_tuples
from qsi.quiver import DimensionVector, Quiver, Weight, ringel_form, sigma_beta
from qsi.reps import DEFAULT_BOUND, build_d_matrix, random_representation, rng_for

log = logging.getLogger(__name__)

ORACLE_START = 8


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def vertex_multiplicity(n: int, k: int, outs, ins) -> int:
    """Multiplicity of det^k in prod S_lam(C^n) (outs) (x) prod S_mu(C^n)^* (ins).

    Each dual S_mu^* is rewritten as S_{mu*} (x) det^{-mu_1} with
    mu* = (mu_1 - mu_n, ..., mu_1 - mu_2, 0), leaving a rectangle multiplicity
    in a product of polynomial Schur modules.
    """
    outs = tuple(tuple(Partition(p)) for p in outs)
    ins = tuple(tuple(Partition(p)) for p in ins)
    return _vertex_mult(n, k, outs, ins)


@lru_cache(maxsize=500_000)
def _vertex_mult(n: int, k: int, outs: tuple, ins: tuple) -> int:
    if n == 0:
        return 1 if not any(outs) and not any(ins) else 0
    factors = list(outs)
    shift = 0
    for mu in ins:
        if not mu:
            continue
        padded = list(mu) + [0] * (n - len(mu))
        first = padded[0]
        shift += first
        factors.append(tuple(x for x in (first - p for p in reversed(padded)) if x))
    return rectangle_mult_raw(n, k + shift, factors)


def _balance_solver(q: Quiver, alpha: DimensionVector, sigma: Weight):
    """Memoized test: can the balance system be completed from vertex `pos` on,
    given the sizes already placed on arrows (indexed like q.arrows)?"""
    idx = {a.id: i for i, a in enumerate(q.arrows)}
    ins_of = {x: [idx[a.id] for a in q.in_arrows(x)] for x in q.vertices}
    live_of = {x: [idx[a.id] for a in q.out_arrows(x) if alpha[x] and alpha[a.head]]
               for x in q.vertices}

    @lru_cache(maxsize=None)
    def feasible(pos: int, pending: tuple) -> bool:
        if pos == len(q.order):
            return True
        x = q.order[pos]
        tin = sum(pending[i] for i in ins_of[x])
        total = sigma[x] * alpha[x] + tin if alpha[x] else -tin
        live = live_of[x]
        if total < 0 or (not live and total):
            return False
        base = list(pending)
        for i in ins_of[x]:
            base[i] = 0
        for sizes in _compositions(total, len(live)):
            nxt = list(base)
            for s, i in zip(sizes, live):
                nxt[i] = s
            if feasible(pos + 1, tuple(nxt)):
                return True
        return False

    return feasible


def balance_feasible(q: Quiver, alpha, sigma) -> bool:
    """Whether the degree-balance system has a nonnegative solution."""
    alpha, sigma = q.dimvec(alpha), q.weight(sigma)
    return _balance_solver(q, alpha, sigma)(0, (0,) * len(q.arrows))


def si_dim_cauchy(q: Quiver, alpha, sigma) -> int:
    """dim SI(Q, alpha)_sigma by enumerating Cauchy summands.

    Vertices are visited in topological order. At vertex x the partitions on
    its incoming arrows are already fixed, so the balance equation fixes the
    total size of the outgoing ones; outgoing partitions are enumerated with at
    most min(alpha(ta), alpha(ha)) rows and first part at most the rectangle
    width, then weighted by the vertex multiplicity. The recursion is memoized
    on the partitions still waiting for their head vertex.
    """
    alpha, sigma = q.dimvec(alpha), q.weight(sigma)
    idx = {a.id: i for i, a in enumerate(q.arrows)}
    ins_of = {x: [idx[a.id] for a in q.in_arrows(x)] for x in q.vertices}
    outs_of = {x: q.out_arrows(x) for x in q.vertices}
    feasible = _balance_solver(q, alpha, sigma)

    @lru_cache(maxsize=None)
    def go(pos: int, pending: tuple) -> int:
        if pos == len(q.order):
            return 1
        x = q.order[pos]
        n = alpha[x]
        ins = tuple(pending[i] for i in ins_of[x])
        outs = outs_of[x]
        if n == 0:
            if any(ins):
                return 0
            nxt = list(pending)
            for i in ins_of[x]:
                nxt[i] = ()
            return go(pos + 1, tuple(nxt))
        k = sigma[x]
        total = k * n + sum(map(sum, ins))
        width = k + sum(mu[0] for mu in ins if mu)
        if total < 0 or width < 0 or (not outs and total):
            return 0
        live = [a for a in outs if alpha[a.head]]
        if not live and total:
            return 0
        base = list(pending)
        for i in ins_of[x]:
            base[i] = ()  # consumed; dropping it keeps the memo key small
        result = 0
        for sizes in _compositions(total, len(live)):
            placed = [0] * len(q.arrows)
            for sz, a in zip(sizes, live):
                placed[idx[a.id]] = sz
            for i, lam in enumerate(base):
                if lam:
                    placed[i] = sum(lam)
            if not feasible(pos + 1, tuple(placed)):
                continue
            choices = [partition_tuples(s, min(n, alpha[a.head]), width) for s, a in zip(sizes, live)]
            for combo in _product(choices):
                m = _vertex_mult(n, k, combo, ins)
                if not m:
                    continue
                nxt = list(base)
                for lam, a in zip(combo, live):
                    nxt[idx[a.id]] = lam
                result += m * go(pos + 1, tuple(nxt))
        return result

    dim = go(0, ((),) * len(q.arrows))
    if dim == 0 and not feasible(0, (0,) * len(q.arrows)):
        log.debug("weight %s is infeasible for alpha %s", sigma.as_dict(), alpha.as_dict())
    return dim


def _product(choices):
    if not choices:
        yield ()
        return
    head, *rest = choices
    for c in head:
        for tail in _product(rest):
            yield (c,) + tail


@dataclass(frozen=True)
class OracleResult:
    dim: int
    samples: int
    ranks: tuple[int, ...]
    prime: int | None


def si_dim_eval_oracle(q: Quiver, alpha, beta, samples: int | None = None, seed=0,
                       bound: int = DEFAULT_BOUND, modular: bool = True,
                       detail: bool = False):
    """Monte Carlo lower bound on dim SI(Q, alpha)_{sigma_beta} from det d^V_W evaluations.

    With samples=None the sample count starts at 8 and doubles (reusing the
    earlier samples) until two consecutive ranks agree and stay below the
    sample count. A fixed `samples` runs a single round. In modular mode the
    determinants and the rank are taken modulo one random prime in
    [2^61, 2^62); modular=False keeps everything over Q.
    """
    alpha, beta = q.dimvec(alpha), q.dimvec(beta)
    form = ringel_form(q, alpha, beta)
    if form != 0:
        raise NotOrthogonal(form)
    prime = random_prime(rng_for(seed, "prime")) if modular else None

    ws, vs = [], []
    table: dict[tuple[int, int], int] = {}

    def entry(i, j):
        key = (i, j)
        if key not in table:
            d = build_d_matrix(vs[j], ws[i])
            table[key] = det_mod(d, prime) if modular else int(determinant(d))
        return table[key]

    def grow(m):
        while len(ws) < m:
            t = len(ws)
            ws.append(random_representation(q, beta, rng_for(seed, t, "W"), bound))
            vs.append(random_representation(q, alpha, rng_for(seed, t, "V"), bound))

    def eval_rank(m):
        grow(m)
        mat = ExactMatrix(m, m, tuple(entry(i, j) for i in range(m) for j in range(m)))
        return rank_mod(mat, prime) if modular else rank(mat)

    ranks = []
    if samples is not None:
        m = samples
        ranks.append(eval_rank(m))
    else:
        m = ORACLE_START
        ranks.append(eval_rank(m))
        while True:
            m *= 2
            ranks.append(eval_rank(m))
            if ranks[-1] == ranks[-2] and ranks[-1] < m // 2:
                break
    result = OracleResult(ranks[-1], m, tuple(ranks), prime)
    return result if detail else result.dim


@dataclass(frozen=True)
class StretchTable:
    beta: DimensionVector
    values: tuple[int, ...]
    oracle: tuple[int, ...] | None = None

    def __getitem__(self, n: int) -> int:
        """Value at stretch factor n (1-based)."""
        return self.values[n - 1]

    @property
    def agree(self) -> tuple[bool, ...] | None:
        if self.oracle is None:
            return None
        return tuple(a == b for a, b in zip(self.values, self.oracle))

    def to_json(self) -> dict:
        out = {"beta": self.beta.as_dict(), "values": list(self.values)}
        if self.oracle is not None:
            out["oracle"] = list(self.oracle)
            out["agree"] = list(self.agree)
        return out


def stretch_function(q: Quiver, alpha, beta, N: int, oracle: bool = False, seed=0) -> StretchTable:
    """Values of n -> dim SI(Q, alpha)_{n sigma_beta} for n = 1..N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    alpha, beta = q.dimvec(alpha), q.dimvec(beta)
    form = ringel_form(q, alpha, beta)
    if form != 0:
        raise NotOrthogonal(form)
    sigma = sigma_beta(q, beta)
    values = tuple(si_dim_cauchy(q, alpha, n * sigma) for n in range(1, N + 1))
    checks = None
    if oracle:
        checks = tuple(
            si_dim_eval_oracle(q, alpha, n * beta, seed=rng_for(seed, "oracle", n).getrandbits(63))
            for n in range(1, N + 1)
        )
    return StretchTable(beta, values, checks)
