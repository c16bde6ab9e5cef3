"""Partial flag quivers attached to tuples of partitions.

For partitions lam^1..lam^s of at most r-1 rows and parts at most ell with
sum of sizes r*ell, the s-armed star quiver with sink of dimension r carries
the semi-invariants that match SL_r invariants of the tensor product of the
corresponding Schur modules.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from qsi.errors import CodimFailure, NonnegativityFailure, NotNested, QSIError, ShapeMismatch
from qsi.linalg import ExactMatrix, rank
from qsi.lr import stretched_invariant
from qsi.partitions import Partition, column_data
from qsi.quiver import Arrow, DimensionVector, Quiver, Weight, ringel_form, sigma_beta
from qsi.reps import Representation
from qsi.semi_invariants import si_dim_cauchy, si_dim_eval_oracle

SINK = "sink"


@dataclass(frozen=True)
class FlagProblem:
    r: int
    ell: int
    lambdas: tuple[Partition, ...]

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(Partition(p) for p in self.lambdas))
        if self.r < 2:
            raise QSIError("rank r must be at least 2")
        if self.ell < 1:
            raise QSIError("column bound ell must be at least 1")
        if len(self.lambdas) < 2:
            raise QSIError("need at least two partitions")
        for p in self.lambdas:
            if len(p) > self.r - 1:
                raise QSIError(f"partition {list(p)} has more than r-1 = {self.r - 1} parts")
            if p and p[0] > self.ell:
                raise QSIError(f"partition {list(p)} has a part larger than ell = {self.ell}")

    @classmethod
    def from_json(cls, data) -> "FlagProblem":
        try:
            return cls(int(data["r"]), int(data["ell"]), tuple(Partition(p) for p in data["lambdas"]))
        except (KeyError, TypeError) as exc:
            raise QSIError(f"malformed flag problem: {exc}") from exc

    def to_json(self) -> dict:
        return {"r": self.r, "ell": self.ell, "lambdas": [list(p) for p in self.lambdas]}

    @property
    def s(self) -> int:
        return len(self.lambdas)


def load_flag_problem(path) -> FlagProblem:
    with open(path) as fh:
        return FlagProblem.from_json(json.load(fh))


@dataclass(frozen=True)
class FlagQuiverSpec:
    quiver: Quiver
    alpha: DimensionVector
    beta: DimensionVector
    sigma: Weight
    arms: tuple[tuple[str, ...], ...]  # vertex ids of each arm, source first


def arm_vertex(p: int, i: int) -> str:
    return f"x{p}_{i}"


def codim_condition(fp: FlagProblem) -> bool:
    return fp.r * fp.ell - sum(p.size for p in fp.lambdas) == 0


def build_flag_quiver(fp: FlagProblem) -> FlagQuiverSpec:
    """Star quiver, alpha, beta and sigma_beta for a flag problem.

    Arm p has one vertex per distinct column length delta_i of lam^p with
    alpha = delta_i. beta is ell at the sink and ell minus the number of
    columns of length >= delta_i at arm vertex i, which gives
    sigma_beta = (number of columns of length delta_i) on arms and -ell at
    the sink.
    """
    if not codim_condition(fp):
        raise CodimFailure(
            f"r*ell - sum |lam| = {fp.r * fp.ell - sum(p.size for p in fp.lambdas)}, expected 0"
        )
    verts, arrows, arms = [], [], []
    alpha, beta, sigma = {}, {}, {}
    for p, lam in enumerate(fp.lambdas, 1):
        deltas, counts = column_data(lam)
        arm = [arm_vertex(p, i) for i in range(1, len(deltas) + 1)]
        arms.append(tuple(arm))
        verts.extend(arm)
        for i, x in enumerate(arm):
            alpha[x] = deltas[i]
            beta[x] = fp.ell - sum(counts[i:])
            sigma[x] = counts[i]
            if beta[x] < 0:
                raise NonnegativityFailure(f"beta({x}) = {beta[x]}")
            head = arm[i + 1] if i + 1 < len(arm) else SINK
            arrows.append(Arrow(f"e{p}_{i + 1}", x, head))
    verts.append(SINK)
    alpha[SINK] = fp.r
    beta[SINK] = fp.ell
    sigma[SINK] = -fp.ell
    q = Quiver(tuple(verts), tuple(arrows))
    spec = FlagQuiverSpec(q, q.dimvec(alpha), q.dimvec(beta), q.weight(sigma), tuple(arms))
    form = ringel_form(q, spec.alpha, spec.beta)
    assert form == 0, f"<alpha,beta> = {form} for a codimension-balanced problem"
    assert sigma_beta(q, spec.beta) == spec.sigma, "beta does not reproduce the flag weight"
    return spec


@dataclass(frozen=True)
class TranslationResult:
    n: int
    quiver_dim: int
    tensor_dim: int
    oracle_dim: int | None = None

    @property
    def equal(self) -> bool:
        return self.quiver_dim == self.tensor_dim

    def to_json(self) -> dict:
        out = {"n": self.n, "quiver_dim": self.quiver_dim, "tensor_dim": self.tensor_dim,
               "equal": self.equal}
        if self.oracle_dim is not None:
            out["oracle_dim"] = self.oracle_dim
        return out


def verify_translation(fp: FlagProblem, n: int, oracle: bool = False, seed=0) -> TranslationResult:
    """dim SI(Q, alpha)_{n sigma_beta} next to dim (S_{n lam^1} (x) ... )^{SL_r}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = build_flag_quiver(fp)
    qd = si_dim_cauchy(spec.quiver, spec.alpha, n * spec.sigma)
    td = stretched_invariant(fp.r, fp.lambdas, n)
    od = si_dim_eval_oracle(spec.quiver, spec.alpha, n * spec.beta, seed=seed) if oracle else None
    return TranslationResult(n, qd, td, od)


def _as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix.from_rows(m)


def _intersection_dim(a: ExactMatrix, b: ExactMatrix) -> int:
    if a.cols == 0 or b.cols == 0:
        return 0
    return rank(a) + rank(b) - rank(a.hstack(b))


def flag_weight_sum(fp: FlagProblem, flags, subspace) -> tuple[int, int]:
    """Left side sum_p sum_i b_i dim(F^p_i cap S) and right side r' * ell."""
    if len(flags) != fp.s:
        raise ShapeMismatch(f"expected {fp.s} flags, got {len(flags)}")
    s = _as_matrix(subspace)
    if s.rows != fp.r:
        raise ShapeMismatch(f"subspace lives in C^{s.rows}, expected C^{fp.r}")
    lhs = 0
    for lam, chain in zip(fp.lambdas, flags):
        deltas, counts = column_data(lam)
        chain = [_as_matrix(f) for f in chain]
        if len(chain) != len(deltas):
            raise ShapeMismatch(f"flag for {list(lam)} needs {len(deltas)} members")
        prev = None
        for f, d in zip(chain, deltas):
            if f.rows != fp.r or rank(f) != d:
                raise ShapeMismatch(f"flag member should span a {d}-dimensional subspace of C^{fp.r}")
            if prev is not None and rank(prev.hstack(f)) != rank(f):
                raise NotNested("flag members are not nested")
            prev = f
        for f, b in zip(chain, counts):
            lhs += b * _intersection_dim(f, s)
    return lhs, rank(s) * fp.ell if s.cols else 0


def flag_semistability_refute(fp: FlagProblem, flags, subspace) -> bool:
    """True iff the semistability inequality holds for this one subspace.

    A False answer refutes semistability of the flag tuple; True certifies
    nothing about other subspaces.
    """
    lhs, rhs = flag_weight_sum(fp, flags, subspace)
    return lhs <= rhs


def find_destabilizing_subspace(fp: FlagProblem, flags, trials: int = 50, seed=0) -> ExactMatrix | None:
    """Search flag members, their pairwise sums and random spans for a violating subspace."""
    rng = random.Random(seed)
    chains = [[_as_matrix(f) for f in chain] for chain in flags]
    members = [f for chain in chains for f in chain]
    candidates = list(members)
    for a in members:
        for b in members:
            if a is not b:
                candidates.append(a.hstack(b))
    pool = [[f[i, j] for i in range(f.rows)] for f in members for j in range(f.cols)]
    for _ in range(trials):
        if not pool:
            break
        k = rng.randint(1, fp.r - 1)
        cols = [rng.choice(pool) for _ in range(k)]
        candidates.append(ExactMatrix.from_rows([list(r) for r in zip(*cols)], cols=k))
    for s in candidates:
        if not flag_semistability_refute(fp, chains, s):
            return s
    return None


def flags_from_representation(fp: FlagProblem, spec: FlagQuiverSpec, rep: Representation):
    """Flags F^p_i = image of the composed arm maps from vertex i into C^r."""
    flags = []
    for p, arm in enumerate(spec.arms, 1):
        chain = []
        for i in range(len(arm)):
            m = None
            for j in range(i, len(arm)):
                a = rep[f"e{p}_{j + 1}"]
                m = a if m is None else a @ m
            chain.append(m)
        flags.append(chain)
    return flags
