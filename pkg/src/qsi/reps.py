"""Concrete quiver representations, Hom/Ext, kernels and generic behaviour.

Monte Carlo routines here (generic_hom, generic_subdimensions, semistability
tests, check_ext_descent) draw integer representations with entries in
[-bound, bound]. Hom dimension is upper semicontinuous, so the minimum over
samples is an upper bound on the generic value and equals it with high
probability; they report what was observed and certify nothing.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import lcm
from typing import Mapping

from qsi.errors import IntertwiningViolation, QuiverMismatch, ShapeMismatch, WeightNotOrthogonal
from qsi.linalg import ExactMatrix, nullspace_basis, rank
from qsi.quiver import DimensionVector, Quiver, evaluate_weight, ringel_form

DEFAULT_BOUND = 10
DEFAULT_TRIALS = 20
COEFF_BOUND = 10


def rng_for(seed, *keys) -> random.Random:
    """Independent deterministic stream for (seed, keys...)."""
    if isinstance(seed, random.Random):
        return random.Random(seed.getrandbits(64))
    return random.Random(":".join(str(k) for k in (seed,) + keys))


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dim: DimensionVector
    matrices: Mapping[str, ExactMatrix]

    def __post_init__(self):
        q = self.quiver
        q.check(self.dim)
        if set(self.matrices) != {a.id for a in q.arrows}:
            raise ShapeMismatch("representation must give one matrix per arrow")
        for a in q.arrows:
            m = self.matrices[a.id]
            if m.shape != (self.dim[a.head], self.dim[a.tail]):
                raise ShapeMismatch(
                    f"arrow {a.id}: expected {self.dim[a.head]}x{self.dim[a.tail]}, got {m.rows}x{m.cols}"
                )

    @classmethod
    def from_lists(cls, q: Quiver, dim, matrices: Mapping[str, list]) -> "Representation":
        dim = q.dimvec(dim)
        mats = {}
        for a in q.arrows:
            mats[a.id] = ExactMatrix.from_rows(matrices[a.id], cols=dim[a.tail])
        return cls(q, dim, mats)

    def __getitem__(self, arrow_id: str) -> ExactMatrix:
        return self.matrices[arrow_id]


@dataclass(frozen=True)
class RepMorphism:
    source: Representation
    target: Representation
    blocks: Mapping[str, ExactMatrix]

    def __post_init__(self):
        q = self.source.quiver
        if self.target.quiver != q:
            raise QuiverMismatch("source and target live on different quivers")
        for x in q.vertices:
            b = self.blocks[x]
            if b.shape != (self.target.dim[x], self.source.dim[x]):
                raise ShapeMismatch(f"block at {x} has shape {b.shape}")

    def is_intertwining(self) -> bool:
        q = self.source.quiver
        for a in q.arrows:
            lhs = self.target[a.id] @ self.blocks[a.tail]
            rhs = self.blocks[a.head] @ self.source[a.id]
            if not (lhs - rhs).is_zero():
                return False
        return True

    def rank_vector(self) -> DimensionVector:
        q = self.source.quiver
        return DimensionVector({x: rank(self.blocks[x]) for x in q.vertices})


def _same_quiver(v: Representation, w: Representation) -> None:
    if v.quiver != w.quiver:
        raise QuiverMismatch("representations live on different quivers")


def _domain_index(q: Quiver, alpha, beta):
    """Column offset of each phi(x) block: vertices in topological order, row-major."""
    offsets = {}
    off = 0
    for x in q.order:
        offsets[x] = off
        off += alpha[x] * beta[x]
    return offsets, off


def build_d_matrix(v: Representation, w: Representation) -> ExactMatrix:
    """Matrix of d^V_W: {phi(x)} -> {W(a) phi(ta) - phi(ha) V(a)}.

    Columns index the entries phi(x)[i][j] (vertices in topological order,
    each block row-major); rows index the entries of the arrow components
    (arrows in declaration order, each block row-major). Each arrow's rows
    are scaled by the common denominator of V(a) and W(a), which leaves the
    rank unchanged.
    """
    _same_quiver(v, w)
    q = v.quiver
    alpha, beta = v.dim, w.dim
    offsets, ncols = _domain_index(q, alpha, beta)
    rows = []
    for a in q.arrows:
        ta, ha = a.tail, a.head
        va, wa = v[a.id], w[a.id]
        d = lcm(va.den, wa.den)
        fv, fw = d // va.den, d // wa.den
        vn = va.entries  # alpha(ha) x alpha(ta)
        wn = wa.entries  # beta(ha) x beta(ta)
        at, ah = alpha[ta], alpha[ha]
        bt, bh = beta[ta], beta[ha]
        for p in range(bh):
            for s in range(at):
                row = [0] * ncols
                # (W(a) phi(ta))[p][s] = sum_k W[p][k] phi(ta)[k][s]
                for k in range(bt):
                    c = wn[p * bt + k]
                    if c:
                        row[offsets[ta] + k * at + s] += fw * c
                # (phi(ha) V(a))[p][s] = sum_k phi(ha)[p][k] V[k][s]
                for k in range(ah):
                    c = vn[k * at + s]
                    if c:
                        row[offsets[ha] + p * ah + k] -= fv * c
                rows.append(row)
    return ExactMatrix(len(rows), ncols, tuple(x for r in rows for x in r))


def hom_dim(v: Representation, w: Representation) -> int:
    d = build_d_matrix(v, w)
    return d.cols - rank(d)


def ext_dim(v: Representation, w: Representation) -> int:
    return hom_dim(v, w) - ringel_form(v.quiver, v.dim, w.dim)


def _blocks_from_vector(q: Quiver, alpha, beta, vec: ExactMatrix) -> dict[str, ExactMatrix]:
    offsets, _ = _domain_index(q, alpha, beta)
    blocks = {}
    for x in q.vertices:
        r, c = beta[x], alpha[x]
        start = offsets[x]
        blocks[x] = ExactMatrix(r, c, vec.entries[start:start + r * c], vec.den)
    return blocks


def hom_basis(v: Representation, w: Representation) -> list[RepMorphism]:
    d = build_d_matrix(v, w)
    q = v.quiver
    return [
        RepMorphism(v, w, _blocks_from_vector(q, v.dim, w.dim, vec))
        for vec in nullspace_basis(d)
    ]


def kernel_representation(phi: RepMorphism) -> tuple[Representation, DimensionVector]:
    """Kernel subrepresentation of phi and the rank vector of phi.

    Each ker phi(x) gets the canonical nullspace basis K_x. Since K_ha has an
    identity block on its free rows, the restricted arrow map S(a), defined by
    K_ha S(a) = V(a) K_ta, is read off from those rows.
    """
    if not phi.is_intertwining():
        raise IntertwiningViolation("phi does not commute with the arrow maps")
    v = phi.source
    q = v.quiver
    bases = {}
    free_rows = {}
    gamma = {}
    for x in q.vertices:
        block = phi.blocks[x]
        vecs = nullspace_basis(block)
        n = v.dim[x]
        gamma[x] = n - len(vecs)
        cols = [[vec.entries[i] for vec in vecs] for i in range(n)]
        bases[x] = ExactMatrix(n, len(vecs), tuple(e for r in cols for e in r))
        free_rows[x] = [next(i for i in range(n) if vec.entries[i] and
                             all(other.entries[i] == 0 for other in vecs if other is not vec))
                        for vec in vecs]
    mats = {}
    sdim = DimensionVector({x: v.dim[x] - gamma[x] for x in q.vertices})
    for a in q.arrows:
        img = v[a.id] @ bases[a.tail]  # alpha(ha) x sdim(ta)
        kh = bases[a.head]
        rows = []
        for k, i in enumerate(free_rows[a.head]):
            scale = kh[i, k]
            rows.append([img[i, j] / scale for j in range(img.cols)])
        s_a = ExactMatrix.from_rows(rows, cols=sdim[a.tail])
        if not (kh @ s_a - img).is_zero():
            raise IntertwiningViolation(f"kernel is not stable under arrow {a.id}")
        mats[a.id] = s_a
    return Representation(q, sdim, mats), DimensionVector(gamma)


def random_representation(q: Quiver, alpha, seed=0, bound: int = DEFAULT_BOUND) -> Representation:
    """Entries uniform in [-bound, bound], deterministic in seed."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    alpha = q.dimvec(alpha) if not isinstance(alpha, DimensionVector) else alpha
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    mats = {}
    for a in q.arrows:
        r, c = alpha[a.head], alpha[a.tail]
        mats[a.id] = ExactMatrix(r, c, tuple(rng.randint(-bound, bound) for _ in range(r * c)))
    return Representation(q, alpha, mats)


def _pair(q, alpha, beta, seed, t, bound):
    v = random_representation(q, alpha, rng_for(seed, t, "V"), bound)
    w = random_representation(q, beta, rng_for(seed, t, "W"), bound)
    return v, w


def generic_hom(q: Quiver, alpha, beta, trials: int = DEFAULT_TRIALS, seed=0,
                bound: int = DEFAULT_BOUND) -> int:
    """Minimum of hom_dim over random pairs (an upper bound on the generic value)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    alpha, beta = q.dimvec(alpha), q.dimvec(beta)
    floor = max(0, ringel_form(q, alpha, beta))
    best = None
    for t in range(trials):
        h = hom_dim(*_pair(q, alpha, beta, seed, t, bound))
        best = h if best is None else min(best, h)
        if best == floor:
            break
    return best


def generic_ext(q: Quiver, alpha, beta, trials: int = DEFAULT_TRIALS, seed=0,
                bound: int = DEFAULT_BOUND) -> int:
    return generic_hom(q, alpha, beta, trials, seed, bound) - ringel_form(q, q.dimvec(alpha), q.dimvec(beta))


def generic_subdimensions(q: Quiver, alpha, trials: int = DEFAULT_TRIALS, seed=0,
                          bound: int = DEFAULT_BOUND) -> list[DimensionVector]:
    """Dimension vectors of subrepresentations of a general representation of dim alpha.

    Uses the criterion: a' is such a vector iff ext(a', alpha - a') = 0 generically.
    """
    alpha = q.dimvec(alpha)
    out = []
    ranges = [range(alpha[x] + 1) for x in q.vertices]
    for combo in itertools.product(*ranges):
        sub = q.dimvec(combo)
        quo = q.dimvec([alpha[x] - sub[x] for x in q.vertices])
        if sub.is_zero() or quo.is_zero():
            out.append(sub)
            continue
        if generic_ext(q, sub, quo, trials, seed, bound) == 0:
            out.append(sub)
    return out


def is_generically_semistable(q: Quiver, alpha, sigma, trials: int = DEFAULT_TRIALS, seed=0,
                              stable: bool = False) -> bool:
    """sigma-(semi)stability of a general representation of dimension alpha."""
    alpha = q.dimvec(alpha)
    sigma = q.weight(sigma)
    val = evaluate_weight(sigma, alpha)
    if val != 0:
        raise WeightNotOrthogonal(val)
    for sub in generic_subdimensions(q, alpha, trials, seed):
        if sub.is_zero():
            continue
        s = evaluate_weight(sigma, sub)
        if s > 0:
            return False
        if stable and s == 0 and sub != alpha:
            return False
    return True


def is_generically_stable(q: Quiver, alpha, sigma, trials: int = DEFAULT_TRIALS, seed=0) -> bool:
    return is_generically_semistable(q, alpha, sigma, trials, seed, stable=True)


@dataclass(frozen=True)
class ExtDescentReport:
    alpha: DimensionVector
    beta: DimensionVector
    hom_vw: int
    ext_vw: int
    ext_sw: int
    gamma: DimensionVector
    kernel_dim: DimensionVector
    no_morphism: bool
    generic: bool

    @property
    def equal(self) -> bool:
        return self.ext_vw == self.ext_sw

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.as_dict(),
            "beta": self.beta.as_dict(),
            "hom_vw": self.hom_vw,
            "ext_vw": self.ext_vw,
            "ext_sw": self.ext_sw,
            "gamma": self.gamma.as_dict(),
            "kernel_dim": self.kernel_dim.as_dict(),
            "no_morphism": self.no_morphism,
            "generic": self.generic,
            "equal": self.equal,
        }


def random_morphism(basis: list[RepMorphism], rng: random.Random,
                    coeff_bound: int = COEFF_BOUND) -> RepMorphism:
    src, tgt = basis[0].source, basis[0].target
    blocks = None
    for phi in basis:
        c = rng.randint(-coeff_bound, coeff_bound)
        scaled = {x: b.scale(c) for x, b in phi.blocks.items()}
        blocks = scaled if blocks is None else {x: blocks[x] + scaled[x] for x in blocks}
    return RepMorphism(src, tgt, blocks)


def check_ext_descent(q: Quiver, alpha, beta, trials: int = DEFAULT_TRIALS, seed=0,
                      bound: int = DEFAULT_BOUND) -> ExtDescentReport:
    """Compare ext(V, W) with ext(ker phi, W) for phi of maximal sampled rank.

    V and W are random. The rank vector gamma of a general morphism is taken
    as the componentwise maximum over `trials` random combinations of a Hom
    basis; the first sample attaining it is used. If Hom(V, W) = 0 then phi = 0,
    S = V, and the report is trivially equal with no_morphism set. If no sample
    attains the componentwise maximum, generic is False.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    alpha, beta = q.dimvec(alpha), q.dimvec(beta)
    v, w = _pair(q, alpha, beta, seed, 0, bound)
    basis = hom_basis(v, w)
    ext_vw = len(basis) - ringel_form(q, alpha, beta)
    if not basis:
        return ExtDescentReport(alpha, beta, 0, ext_vw, ext_vw, q.zero(), alpha, True, True)
    rng = rng_for(seed, "phi")
    samples = []
    for _ in range(trials):
        phi = random_morphism(basis, rng)
        samples.append((phi, phi.rank_vector()))
    gamma = DimensionVector({x: max(g[x] for _, g in samples) for x in q.vertices})
    chosen = next((phi for phi, g in samples if g == gamma), None)
    if chosen is None:
        phi, g = max(samples, key=lambda s: s[1].total())
        s, _ = kernel_representation(phi)
        return ExtDescentReport(alpha, beta, len(basis), ext_vw, ext_dim(s, w), g, s.dim, False, False)
    s, g = kernel_representation(chosen)
    return ExtDescentReport(alpha, beta, len(basis), ext_vw, ext_dim(s, w), g, s.dim, False, True)
