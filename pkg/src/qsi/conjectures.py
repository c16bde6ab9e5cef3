"""Stretching behaviour checks and small-instance searches.

Every check looks only at the computed window n = 1..N; a pass means the
table is consistent with the predicted behaviour there.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import sympy

from qsi.errors import InsufficientData
from qsi.quiver import DimensionVector, Quiver, ringel_form, sigma_beta
from qsi.semi_invariants import StretchTable, si_dim_cauchy, stretch_function

DEFAULT_N = 6


@dataclass(frozen=True)
class StretchVerdict:
    behavior: str  # polynomial-consistent | saturation | fulton | ktt
    holds: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"behavior": self.behavior, "holds": self.holds, "details": self.details}


def _values(table) -> tuple[int, ...]:
    return tuple(table.values) if isinstance(table, StretchTable) else tuple(table)


def _coefficients(values: Sequence[int], degree: int) -> list:
    n = sympy.Symbol("n")
    points = [(i + 1, values[i]) for i in range(degree + 1)]
    poly = sympy.Poly(sympy.interpolate(points, n), n)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return [int(c) if c.denominator == 1 else str(c) for c in coeffs]


def check_polynomial_consistency(table, degree_bound: int) -> StretchVerdict:
    """All forward differences of order degree_bound + 1 vanish on the table.

    On success details["coefficients"] lists the interpolating polynomial in n,
    constant term first. On failure details["n"] is the last index of the
    first window whose difference is nonzero.
    """
    vals = _values(table)
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    if len(vals) < degree_bound + 2:
        raise InsufficientData(
            f"{len(vals)} values cannot test degree <= {degree_bound}; need {degree_bound + 2}"
        )
    order = degree_bound + 1
    diffs = list(vals)
    for _ in range(order):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    for k, d in enumerate(diffs):
        if d != 0:
            n = k + order + 1
            return StretchVerdict("polynomial-consistent", False,
                                  {"n": n, "value": vals[n - 1], "difference": d})
    return StretchVerdict("polynomial-consistent", True,
                          {"coefficients": _coefficients(vals, degree_bound)})


def _predicted(behavior: str, premise: int, expected: Callable[[int], int], table) -> StretchVerdict:
    vals = _values(table)
    if not vals:
        raise InsufficientData("empty table")
    if vals[0] != premise:
        return StretchVerdict(behavior, True, {"vacuous": True})
    for i, v in enumerate(vals):
        n = i + 1
        if v != expected(n):
            return StretchVerdict(behavior, False, {"n": n, "value": v, "expected": expected(n)})
    return StretchVerdict(behavior, True, {"vacuous": False, "checked": len(vals)})


def check_saturation(table) -> StretchVerdict:
    return _predicted("saturation", 0, lambda n: 0, table)


def check_fulton(table) -> StretchVerdict:
    return _predicted("fulton", 1, lambda n: 1, table)


def check_ktt(table) -> StretchVerdict:
    return _predicted("ktt", 2, lambda n: n + 1, table)


# -- instance generation ---------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    quiver: Quiver
    alpha: DimensionVector
    beta: DimensionVector

    def to_json(self) -> dict:
        return {"quiver": self.quiver.to_json(), "alpha": self.alpha.as_dict(),
                "beta": self.beta.as_dict()}


def _topological_relabelings(k: int, arrows: dict) -> Iterator[tuple]:
    for perm in itertools.permutations(range(k)):
        if all(perm[i] < perm[j] for (i, j) in arrows):
            yield perm


def _relabel(arrows: dict, perm) -> tuple:
    return tuple(sorted((perm[i], perm[j], c) for (i, j), c in arrows.items()))


def canonical_dags(k: int, max_parallel: int = 2) -> list[tuple]:
    """Acyclic multigraphs on k vertices up to isomorphism.

    Each is a sorted tuple of (tail, head, multiplicity) with tail < head,
    chosen as the least such encoding over all topological relabelings.
    """
    pairs = list(itertools.combinations(range(k), 2))
    seen = set()
    for mults in itertools.product(range(max_parallel + 1), repeat=len(pairs)):
        arrows = {p: c for p, c in zip(pairs, mults) if c}
        key = min(_relabel(arrows, perm) for perm in _topological_relabelings(k, arrows))
        seen.add(key)
    return sorted(seen, key=lambda t: (sum(c for *_, c in t), t))


def quiver_from_code(k: int, code: tuple) -> Quiver:
    edges = [(i + 1, j + 1) for i, j, c in code for _ in range(c)]
    return Quiver.from_edges(k, edges)


def _automorphisms(k: int, code: tuple) -> list[tuple]:
    arrows = {(i, j): c for i, j, c in code}
    return [perm for perm in itertools.permutations(range(k)) if _relabel_any(arrows, perm) == code]


def _relabel_any(arrows: dict, perm) -> tuple:
    out = []
    for (i, j), c in arrows.items():
        a, b = perm[i], perm[j]
        if a > b:
            return ()
        out.append((a, b, c))
    return tuple(sorted(out))


def enumerate_instances(vertex_bound: int, dim_bound: int, max_parallel: int = 2) -> Iterator[Instance]:
    """All (Q, alpha, beta) with alpha in [1, dim_bound], beta in [0, dim_bound],
    beta != 0 and <alpha, beta> = 0, up to isomorphism."""
    for k in range(1, vertex_bound + 1):
        for code in canonical_dags(k, max_parallel):
            q = quiver_from_code(k, code)
            autos = _automorphisms(k, code) if code else list(itertools.permutations(range(k)))
            seen = set()
            for a in itertools.product(range(1, dim_bound + 1), repeat=k):
                alpha = q.dimvec(a)
                for b in itertools.product(range(dim_bound + 1), repeat=k):
                    if not any(b):
                        continue
                    beta = q.dimvec(b)
                    if ringel_form(q, alpha, beta) != 0:
                        continue
                    key = min(
                        (tuple(a[perm.index(i)] for i in range(k)), tuple(b[perm.index(i)] for i in range(k)))
                        for perm in autos
                    )
                    if key in seen:
                        continue
                    seen.add(key)
                    yield Instance(q, alpha, beta)


def random_instance(rng: random.Random, max_vertices: int = 4, max_parallel: int = 2,
                    max_entry: int = 3, zero_alpha: bool = True) -> Instance:
    """Random acyclic quiver with alpha, beta != 0 and <alpha, beta> = 0."""
    while True:
        k = rng.randint(2, max_vertices)
        edges = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)
                 for _ in range(rng.randint(0, max_parallel))]
        if not edges:
            continue
        q = Quiver.from_edges(k, edges)
        low = 0 if zero_alpha else 1
        alpha = q.dimvec([rng.randint(low, max_entry) for _ in range(k)])
        if alpha.is_zero():
            continue
        betas = [b for b in itertools.product(range(max_entry + 1), repeat=k)
                 if any(b) and ringel_form(q, alpha, q.dimvec(b)) == 0]
        if not betas:
            continue
        return Instance(q, alpha, q.dimvec(rng.choice(betas)))


def random_instances(count: int, seed=0, accept: Callable[[Instance], bool] | None = None,
                     **kwargs) -> list[Instance]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = random_instance(rng, **kwargs)
        if accept is None or accept(inst):
            out.append(inst)
    return out


@dataclass(frozen=True)
class Finding:
    instance: Instance
    table: StretchTable
    verdict: StretchVerdict

    def to_json(self) -> dict:
        out = self.instance.to_json()
        out["values"] = list(self.table.values)
        if self.table.oracle is not None:
            out["oracle"] = list(self.table.oracle)
        out["ktt_holds"] = self.verdict.holds
        out["critical"] = not self.verdict.holds
        return out


def search_ktt_witnesses(vertex_bound: int, dim_bound: int, N: int = DEFAULT_N, seed=0,
                         oracle: bool = False, max_parallel: int = 2) -> list[Finding]:
    """Instances with P(1) = dim SI(Q, alpha)_{sigma_beta} = 2 and their stretch tables.

    A returned finding whose verdict fails is a counterexample to the KTT
    stretching law and is marked critical.
    """
    if vertex_bound < 1 or dim_bound < 1 or N < 1:
        raise ValueError("bounds must be >= 1")
    out = []
    for inst in enumerate_instances(vertex_bound, dim_bound, max_parallel):
        q = inst.quiver
        if si_dim_cauchy(q, inst.alpha, sigma_beta(q, inst.beta)) != 2:
            continue
        table = stretch_function(q, inst.alpha, inst.beta, N, oracle=oracle, seed=seed)
        out.append(Finding(inst, table, check_ktt(table)))
    return out
