"""Acyclic quivers, dimension vectors, weights and the Ringel form."""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from qsi.errors import CyclicQuiver, DanglingArrow, QSIError, VertexMismatch


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str


class Weight(Mapping):
    """Immutable integer function on the vertices of a quiver.

    Keyed by vertex identifier; iteration follows the order the values were
    given in (normally the quiver's vertex order).
    """

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[str, int]):
        vals = {}
        for k, v in values.items():
            if isinstance(v, bool) or int(v) != v:
                raise QSIError(f"non-integer value {v!r} at vertex {k!r}")
            vals[str(k)] = int(v)
        self._values = vals
        self._hash = None
        self._check()

    def _check(self):
        pass

    def __getitem__(self, key):
        return self._values[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self._values) == dict(other)
        return NotImplemented

    def __repr__(self):
        return f"{type(self).__name__}({self._values!r})"

    def _combine(self, other, op):
        if set(self) != set(other):
            raise VertexMismatch("vertex sets differ")
        return {k: op(v, other[k]) for k, v in self._values.items()}

    def __add__(self, other):
        return _result_type(self, other)(self._combine(other, lambda a, b: a + b))

    def __sub__(self, other):
        return Weight(self._combine(other, lambda a, b: a - b))

    def __mul__(self, n: int):
        out = {k: n * v for k, v in self._values.items()}
        if isinstance(self, DimensionVector) and n >= 0:
            return DimensionVector(out)
        return Weight(out)

    __rmul__ = __mul__

    def __neg__(self):
        return Weight({k: -v for k, v in self._values.items()})

    def __le__(self, other):
        return all(v <= other[k] for k, v in self._values.items())

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._values.values())

    def total(self) -> int:
        return sum(self._values.values())

    def as_dict(self) -> dict[str, int]:
        return dict(self._values)


class DimensionVector(Weight):
    __slots__ = ()

    def _check(self):
        for k, v in self._values.items():
            if v < 0:
                raise QSIError(f"dimension vector has negative entry {v} at {k!r}")


def _result_type(a, b):
    if isinstance(a, DimensionVector) and isinstance(b, DimensionVector):
        return DimensionVector
    return Weight


VectorLike = Union[Mapping[str, int], Sequence[int]]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    order: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self,
            "arrows",
            tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows),
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise QSIError("duplicate vertex identifiers")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise QSIError("duplicate arrow identifiers")
        object.__setattr__(self, "order", tuple(validate_acyclic(self)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Quiver":
        """Quiver on vertices v1..vn with arrows a1, a2, ... given as 1-based pairs."""
        verts = [f"v{i}" for i in range(1, n + 1)]
        arrows = [Arrow(f"a{k}", f"v{t}", f"v{h}") for k, (t, h) in enumerate(edges, 1)]
        return cls(tuple(verts), tuple(arrows))

    def out_arrows(self, x: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == x]

    def in_arrows(self, x: str) -> list[Arrow]:
        return [a for a in self.arrows if a.head == x]

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def _vector(self, values: VectorLike, cls):
        if isinstance(values, Mapping):
            if set(values) != set(self.vertices):
                raise VertexMismatch(
                    f"expected vertices {sorted(self.vertices)}, got {sorted(values)}"
                )
            return cls({v: values[v] for v in self.vertices})
        values = list(values)
        if len(values) != len(self.vertices):
            raise VertexMismatch(
                f"expected {len(self.vertices)} entries, got {len(values)}"
            )
        return cls(dict(zip(self.vertices, values)))

    def dimvec(self, values: VectorLike) -> DimensionVector:
        return self._vector(values, DimensionVector)

    def weight(self, values: VectorLike) -> Weight:
        return self._vector(values, Weight)

    def zero(self) -> DimensionVector:
        return DimensionVector({v: 0 for v in self.vertices})

    def check(self, vec: Mapping[str, int]) -> None:
        if set(vec) != set(self.vertices):
            raise VertexMismatch(
                f"vector on {sorted(vec)} does not match quiver vertices {sorted(self.vertices)}"
            )

    def rep_dimension(self, alpha: Mapping[str, int]) -> int:
        """Dimension of the affine space Rep(Q, alpha)."""
        return sum(alpha[a.tail] * alpha[a.head] for a in self.arrows)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Quiver":
        try:
            verts = tuple(data["vertices"])
            arrows = tuple(Arrow(str(a["id"]), str(a["tail"]), str(a["head"])) for a in data["arrows"])
        except (KeyError, TypeError) as exc:
            raise QSIError(f"malformed quiver JSON: {exc}") from exc
        return cls(verts, arrows)


def load_quiver(path) -> tuple[Quiver, dict]:
    """Read a quiver JSON file; returns the quiver and the raw document."""
    with open(path) as fh:
        data = json.load(fh)
    return Quiver.from_json(data), data


def validate_acyclic(q: Quiver) -> list[str]:
    """Topological order of the vertices (Kahn's algorithm, ties by declaration order)."""
    verts = set(q.vertices)
    for a in q.arrows:
        if a.tail not in verts or a.head not in verts:
            raise DanglingArrow(f"arrow {a.id} references undeclared vertex")
    indeg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        indeg[a.head] += 1
    order = []
    ready = [v for v in q.vertices if indeg[v] == 0]
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in q.arrows:
            if a.tail == v:
                indeg[a.head] -= 1
                if indeg[a.head] == 0:
                    ready.append(a.head)
        ready.sort(key=q.vertices.index)
    if len(order) < len(q.vertices):
        raise CyclicQuiver(_find_cycle(q, set(q.vertices) - set(order)))
    return order


def _find_cycle(q: Quiver, remaining: set[str]) -> list[str]:
    # every vertex left after Kahn has an incoming arrow from another leftover vertex
    pred = {}
    for a in q.arrows:
        if a.head in remaining and a.tail in remaining:
            pred.setdefault(a.head, a.tail)
    v = min(remaining, key=q.vertices.index)
    seen = []
    while v not in seen:
        seen.append(v)
        v = pred[v]
    cycle = seen[seen.index(v):]
    cycle.reverse()
    return cycle + [cycle[0]]


def ringel_form(q: Quiver, a: Mapping[str, int], b: Mapping[str, int]) -> int:
    q.check(a)
    q.check(b)
    s = sum(a[x] * b[x] for x in q.vertices)
    return s - sum(a[arr.tail] * b[arr.head] for arr in q.arrows)


def sigma_beta(q: Quiver, beta: Mapping[str, int]) -> Weight:
    """The weight x -> -beta(x) + sum of beta(head a) over arrows a leaving x."""
    q.check(beta)
    out = {x: -beta[x] for x in q.vertices}
    for a in q.arrows:
        out[a.tail] += beta[a.head]
    return Weight(out)


def evaluate_weight(sigma: Mapping[str, int], gamma: Mapping[str, int]) -> int:
    if set(sigma) != set(gamma):
        raise VertexMismatch("weight and vector are defined on different vertices")
    return sum(sigma[x] * gamma[x] for x in sigma)
