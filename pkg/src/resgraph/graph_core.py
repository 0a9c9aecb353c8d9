"""Weighted dual graphs of resolutions and their intersection lattice.

A vertex of weight ``n`` is a curve ``E`` with ``E**2 == -n``.  Vertex order
is whatever the caller gave and every divisor vector is indexed by it.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Iterable, Sequence, Union

from . import exact


class GraphError(ValueError):
    """Invalid graph data (minimality, connectivity, edges)."""


class NotContractible(ValueError):
    """The intersection form is not negative definite."""


@dataclass(frozen=True)
class Vertex:
    id: str
    weight: int
    genus: int = 0


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()
    # False admits (-1)-curves, for configurations on a non-minimal surface
    minimal: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise GraphError("graph has no vertices")
        pos = {}
        for i, v in enumerate(verts):
            if v.id in pos:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            if v.genus < 0:
                raise GraphError(f"vertex {v.id!r}: negative genus")
            if v.weight < 1 or (self.minimal and v.genus == 0 and v.weight < 2):
                raise GraphError(
                    f"vertex {v.id!r}: weight {v.weight} not allowed on a minimal resolution"
                )
            pos[v.id] = i
        norm = []
        for a, b in self.edges:
            if a not in pos or b not in pos:
                raise GraphError(f"edge {a}-{b} references an unknown vertex")
            if a == b:
                raise GraphError(f"self-loop at {a!r} is not supported")
            norm.append((a, b) if pos[a] < pos[b] else (b, a))
        norm.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        for e, m in Counter(norm).items():
            if m > 2:
                raise GraphError(f"edge {e[0]}-{e[1]} has multiplicity {m} > 2")
        object.__setattr__(self, "edges", tuple(norm))
        if not self._connected():
            raise GraphError("graph is disconnected")

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        """``adjacency[i][j]`` = number of edges between vertices i and j."""
        adj: list[dict[int, int]] = [{} for _ in self.vertices]
        for a, b in self.edges:
            i, j = self.index[a], self.index[b]
            adj[i][j] = adj[i].get(j, 0) + 1
            adj[j][i] = adj[j].get(i, 0) + 1
        return tuple(adj)

    def degree(self, i: int) -> int:
        return sum(self.adjacency[i].values())

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(v.weight for v in self.vertices)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1

    def _connected(self) -> bool:
        idx = {v.id: i for i, v in enumerate(self.vertices)}
        nbrs: list[set[int]] = [set() for _ in self.vertices]
        for a, b in self.edges:
            nbrs[idx[a]].add(idx[b])
            nbrs[idx[b]].add(idx[a])
        seen = {0}
        stack = [0]
        while stack:
            for j in nbrs[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.vertices)

    def sparse_rows(self, sign: int = 1) -> list[dict[int, int]]:
        """Rows of ``sign * M`` in sparse form."""
        rows = []
        for i, v in enumerate(self.vertices):
            r = {j: sign * m for j, m in self.adjacency[i].items()}
            r[i] = -sign * v.weight
            rows.append(r)
        return rows

    def relabel(self, order: Sequence[int]) -> "DualGraph":
        """Same graph with vertices listed in ``order`` (a permutation of indices)."""
        return DualGraph(tuple(self.vertices[i] for i in order), self.edges, self.minimal)


@dataclass(frozen=True)
class QDivisor:
    """Rational combination of the exceptional curves, in graph vertex order."""

    ids: tuple[str, ...]
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.ids) != len(self.coeffs):
            raise ValueError("ids and coefficients differ in length")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def on(cls, g: DualGraph, coeffs: Iterable) -> "QDivisor":
        return cls(g.ids, tuple(coeffs))

    def __getitem__(self, vid: str) -> Fraction:
        return self.coeffs[self.ids.index(vid)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.ids, self.coeffs))

    def _combine(self, other: "QDivisor", f):
        if self.ids != other.ids:
            raise ValueError("divisors live on different graphs")
        return QDivisor(self.ids, tuple(f(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, c):
        return QDivisor(self.ids, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def ceil(self) -> "QDivisor":
        return QDivisor(self.ids, tuple(Fraction(ceil(c)) for c in self.coeffs))

    def floor(self) -> "QDivisor":
        return QDivisor(self.ids, tuple(Fraction(floor(c)) for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def intersection_matrix(g: DualGraph) -> list[list[int]]:
    n = len(g)
    m = [[0] * n for _ in range(n)]
    for i, row in enumerate(g.sparse_rows()):
        for j, v in row.items():
            m[i][j] = v
    return m


def dot_with_curves(g: DualGraph, d: QDivisor) -> list[Fraction]:
    """The vector ``(D . E_i)_i``."""
    c = d.coeffs
    out = []
    for i, v in enumerate(g.vertices):
        s = -v.weight * c[i]
        for j, m in g.adjacency[i].items():
            s += m * c[j]
        out.append(s)
    return out


def intersect(g: DualGraph, a: QDivisor, b: QDivisor) -> Fraction:
    return sum((x * y for x, y in zip(a.coeffs, dot_with_curves(g, b))), Fraction(0))


def canonical_degrees(g: DualGraph) -> list[int]:
    """Adjunction: ``K . E_i = 2 g_i - 2 - E_i^2``."""
    return [2 * v.genus - 2 + v.weight for v in g.vertices]


def is_negative_definite(g: DualGraph) -> str:
    """One of "Definite", "SemidefiniteDegenerate", "Indefinite" for the form of M."""
    return exact.classify_form(g.sparse_rows(sign=-1))


def arithmetic_genus(g: DualGraph, z: QDivisor) -> int:
    """``p_a(Z) = 1 + (Z^2 + K.Z)/2`` for an effective nonzero integral cycle."""
    if not z.is_integral():
        raise ValueError("arithmetic genus needs an integral cycle")
    if any(c < 0 for c in z.coeffs) or z.is_zero():
        raise ValueError("arithmetic genus needs an effective nonzero cycle")
    kz = sum(c * k for c, k in zip(z.coeffs, canonical_degrees(g)))
    twice = 2 + intersect(g, z, z) + kz
    assert twice.denominator == 1 and twice.numerator % 2 == 0
    return int(twice) // 2


# ---------------------------------------------------------------- shapes


@dataclass(frozen=True)
class Chain:
    weights: tuple[int, ...]


@dataclass(frozen=True)
class Cycle:
    weights: tuple[int, ...]


@dataclass(frozen=True)
class Star:
    """Center of weight ``center``; each arm is listed from the curve touching the center outwards."""

    center: int
    arms: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ForkedChain:
    """``[n_1, ..., n_s; [2]^4]``: a spine with two (-2)-tips at each end."""

    spine: tuple[int, ...]


@dataclass(frozen=True)
class EllipticVertex:
    weight: int


@dataclass(frozen=True)
class Other:
    pass


GraphShape = Union[Chain, Cycle, Star, ForkedChain, EllipticVertex, Other]


class _Builder:
    def __init__(self):
        self.vertices: list[Vertex] = []
        self.edges: list[tuple[str, str]] = []

    def add(self, weight, genus=0) -> str:
        vid = f"v{len(self.vertices)}"
        self.vertices.append(Vertex(vid, weight, genus))
        return vid

    def path(self, weights, attach=None) -> list[str]:
        ids = []
        prev = attach
        for w in weights:
            v = self.add(w)
            if prev is not None:
                self.edges.append((prev, v))
            ids.append(v)
            prev = v
        return ids

    def graph(self) -> DualGraph:
        return DualGraph(tuple(self.vertices), tuple(self.edges))


def chain(weights: Sequence[int]) -> DualGraph:
    b = _Builder()
    b.path(weights)
    return b.graph()


def cycle(weights: Sequence[int]) -> DualGraph:
    if len(weights) < 2:
        raise GraphError("a cycle needs at least two curves (self-loops are not modelled)")
    b = _Builder()
    ids = b.path(weights)
    b.edges.append((ids[-1], ids[0]))
    return b.graph()


def star(center: int, arms: Sequence[Sequence[int]]) -> DualGraph:
    b = _Builder()
    c = b.add(center)
    for arm in arms:
        if not arm:
            raise GraphError("empty star arm")
        b.path(arm, attach=c)
    return b.graph()


def forked_chain(spine: Sequence[int]) -> DualGraph:
    if not spine:
        raise GraphError("empty spine")
    b = _Builder()
    ids = b.path(spine)
    for end in (ids[0], ids[0], ids[-1], ids[-1]):
        b.path([2], attach=end)
    return b.graph()


def elliptic(weight: int) -> DualGraph:
    return DualGraph((Vertex("v0", weight, 1),))


def build(shape: GraphShape) -> DualGraph:
    if isinstance(shape, Chain):
        return chain(shape.weights)
    if isinstance(shape, Cycle):
        return cycle(shape.weights)
    if isinstance(shape, Star):
        return star(shape.center, shape.arms)
    if isinstance(shape, ForkedChain):
        return forked_chain(shape.spine)
    if isinstance(shape, EllipticVertex):
        return elliptic(shape.weight)
    raise ValueError(f"cannot build {shape!r}")


def _walk(g: DualGraph, start: int, came_from: int) -> list[int]:
    """Follow a path of valence-2 vertices away from ``came_from``."""
    out = [start]
    prev, cur = came_from, start
    while True:
        nxt = [j for j in g.adjacency[cur] if j != prev]
        if len(nxt) != 1 or g.degree(cur) > 2:
            return out
        prev, cur = cur, nxt[0]
        out.append(cur)


def recognize_shape(g: DualGraph) -> GraphShape:
    """Most specific shape tag of ``g``; ForkedChain wins over Star."""
    n = len(g)
    if any(v.genus for v in g.vertices):
        if n == 1 and g.vertices[0].genus == 1:
            return EllipticVertex(g.vertices[0].weight)
        return Other()
    w = g.weights
    degs = [g.degree(i) for i in range(n)]
    if n == 1:
        return Chain(w)
    simple = all(m == 1 for adj in g.adjacency for m in adj.values())
    if not g.is_tree():
        if all(d == 2 for d in degs) and len(g.edges) == n:
            # one circuit: walk it from vertex 0 towards its lower-indexed neighbour
            order = [0]
            prev, cur = None, 0
            while True:
                cands = sorted(g.adjacency[cur])
                if prev is not None:
                    nxt = [j for j in cands if j != prev] or cands
                else:
                    nxt = cands
                if nxt[0] == 0 or len(order) == n:
                    break
                prev, cur = cur, nxt[0]
                order.append(cur)
            if len(order) == n:
                return Cycle(tuple(w[i] for i in order))
        return Other()
    if not simple:
        return Other()
    branch = [i for i in range(n) if degs[i] >= 3]
    if not branch:
        end = min(i for i in range(n) if degs[i] == 1)
        nbr = next(iter(g.adjacency[end]))
        return Chain(tuple(w[i] for i in [end] + _walk(g, nbr, end)))

    def tips(b):
        return [j for j in g.adjacency[b] if degs[j] == 1 and w[j] == 2]

    if len(branch) == 1:
        c = branch[0]
        if degs[c] == 4 and len(tips(c)) == 4:
            return ForkedChain((w[c],))
        arms = []
        for j in sorted(g.adjacency[c]):
            arms.append(tuple(w[i] for i in _walk(g, j, c)))
        return Star(w[c], tuple(arms))
    if len(branch) == 2 and all(degs[b] == 3 and len(tips(b)) == 2 for b in branch):
        b0, b1 = branch
        start = next(j for j in g.adjacency[b0] if j not in tips(b0))
        spine = [b0] + _walk(g, start, b0)
        if spine[-1] != b1:
            return Other()
        return ForkedChain(tuple(w[i] for i in spine))
    return Other()
