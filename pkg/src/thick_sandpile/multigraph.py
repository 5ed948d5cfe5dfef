"""Undirected multigraphs, their Laplacians, and a few graph families.

Vertices are the integers ``0..vertex_count-1``. Edge multiplicities live in
a dict keyed by ordered pairs ``(i, j)`` with ``i < j``.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterator, Mapping, Sequence

from .linalg import IntegerMatrix, det

__all__ = [
    "GraphError",
    "EnumerationGuardError",
    "Multigraph",
    "as_multiplicities",
    "build_thick_cycle",
    "laplacian",
    "reduced_laplacian",
    "spanning_tree_count",
    "spanning_tree_enumerate",
    "build_basic",
    "cartesian_product",
    "build_book_graph",
    "build_banana",
    "enumeration_guard",
]

DEFAULT_ENUM_GUARD = 16
ENUM_GUARD_ENV = "SANDPILE_ENUM_GUARD"


class GraphError(ValueError):
    """Invalid graph data or graph-family parameters."""


class EnumerationGuardError(GraphError):
    """The graph is too large for exhaustive spanning-tree enumeration."""


def enumeration_guard() -> int:
    """Edge budget (counted with multiplicity) for :func:`spanning_tree_enumerate`."""
    raw = os.environ.get(ENUM_GUARD_ENV)
    if raw is None or raw == "":
        return DEFAULT_ENUM_GUARD
    try:
        return int(raw)
    except ValueError:
        raise GraphError(f"{ENUM_GUARD_ENV}={raw!r} is not an integer") from None


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


class Multigraph:
    """Undirected loopless multigraph.

    Parameters
    ----------
    vertex_count : int
        Number of vertices, at least 1.
    edges : iterable of (i, j, multiplicity) or mapping {(i, j): multiplicity}
        Repeated pairs accumulate. Zero multiplicities are dropped.
    """

    __slots__ = ("vertex_count", "_weights")

    def __init__(self, vertex_count: int, edges=()):
        if vertex_count < 1:
            raise GraphError("a graph needs at least one vertex")
        if isinstance(edges, Mapping):
            edges = ((i, j, w) for (i, j), w in edges.items())
        weights: dict[tuple[int, int], int] = {}
        for i, j, w in edges:
            i, j, w = int(i), int(j), int(w)
            if not (0 <= i < vertex_count and 0 <= j < vertex_count):
                raise GraphError(f"edge ({i}, {j}) has an endpoint outside 0..{vertex_count - 1}")
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if w < 0:
                raise GraphError(f"negative multiplicity {w} on edge ({i}, {j})")
            if w == 0:
                continue
            key = (i, j) if i < j else (j, i)
            weights[key] = weights.get(key, 0) + w
        self.vertex_count = vertex_count
        self._weights = dict(sorted(weights.items()))

    def weight(self, i: int, j: int) -> int:
        if i == j:
            return 0
        return self._weights.get((i, j) if i < j else (j, i), 0)

    def degree(self, i: int) -> int:
        return sum(self.weight(i, j) for j in range(self.vertex_count))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, multiplicity)`` with ``i < j``, sorted."""
        for (i, j), w in self._weights.items():
            yield i, j, w

    @property
    def edge_count(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(self._weights.values())

    def is_connected(self) -> bool:
        ds = _DisjointSet(self.vertex_count)
        components = self.vertex_count
        for i, j, _ in self.edges():
            if ds.union(i, j):
                components -= 1
        return components == 1

    def degree_sequence(self) -> list[int]:
        return sorted(self.degree(i) for i in range(self.vertex_count))

    def to_json(self) -> dict:
        return {"vertex_count": self.vertex_count, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Multigraph":
        """Parse ``{"vertex_count": n, "edges": [[i, j, m], ...]}`` strictly."""
        try:
            n = data["vertex_count"]
            raw_edges = data["edges"]
        except (KeyError, TypeError):
            raise GraphError("graph JSON needs 'vertex_count' and 'edges'") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphError("'vertex_count' must be an integer")
        seen = set()
        edges = []
        for e in raw_edges:
            if (not isinstance(e, (list, tuple)) or len(e) != 3
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise GraphError(f"edge {e!r} is not an [i, j, multiplicity] triple of integers")
            i, j, w = e
            if i >= j:
                raise GraphError(f"edge {e!r} must have i < j")
            if w < 1:
                raise GraphError(f"edge {e!r} must have multiplicity >= 1")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge pair ({i}, {j})")
            seen.add((i, j))
            edges.append((i, j, w))
        return cls(n, edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._weights == other._weights

    def __hash__(self) -> int:
        return hash((self.vertex_count, tuple(self._weights.items())))

    def __repr__(self) -> str:
        return f"Multigraph({self.vertex_count}, {list(self.edges())})"


def as_multiplicities(a: Sequence[int]) -> tuple[int, ...]:
    """Validate a thick-cycle multiplicity vector and return it as a tuple."""
    a = tuple(int(x) for x in a)
    if len(a) < 2:
        raise GraphError(f"thick cycles need at least 2 multiplicities, got {len(a)}")
    bad = [x for x in a if x < 1]
    if bad:
        raise GraphError(f"multiplicities must be positive, got {bad[0]}")
    return a


def build_thick_cycle(a: Sequence[int]) -> Multigraph:
    """Cycle on ``len(a)`` vertices with ``a[i]`` parallel edges between ``i`` and ``i+1``.

    For two multiplicities both bundles join the same pair of vertices.
    """
    a = as_multiplicities(a)
    n = len(a)
    return Multigraph(n, ((i, (i + 1) % n, w) for i, w in enumerate(a)))


def laplacian(g: Multigraph) -> IntegerMatrix:
    n = g.vertex_count
    rows = [[-g.weight(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][i] = g.degree(i)
    return IntegerMatrix.from_rows(rows, n)


def reduced_laplacian(g: Multigraph, sink: int) -> IntegerMatrix:
    """Laplacian with the sink's row and column deleted."""
    if not 0 <= sink < g.vertex_count:
        raise GraphError(f"sink {sink} is not a vertex of a {g.vertex_count}-vertex graph")
    keep = [i for i in range(g.vertex_count) if i != sink]
    return laplacian(g).submatrix(keep, keep)


def spanning_tree_count(g: Multigraph, sink: int = 0) -> int:
    """Number of spanning trees via the matrix-tree theorem (0 if disconnected)."""
    return abs(det(reduced_laplacian(g, sink)))


def spanning_tree_enumerate(g: Multigraph, guard: int | None = None) -> int:
    """Count spanning trees by checking every (n-1)-subset of edges.

    Parallel edges are distinct edges here. Refuses graphs with more than
    ``guard`` edges (default: :func:`enumeration_guard`).
    """
    guard = enumeration_guard() if guard is None else guard
    if g.edge_count > guard:
        raise EnumerationGuardError(
            f"{g.edge_count} edges exceeds the enumeration guard of {guard}"
        )
    n = g.vertex_count
    flat = [(i, j) for i, j, w in g.edges() for _ in range(w)]
    count = 0
    for subset in itertools.combinations(flat, n - 1):
        ds = _DisjointSet(n)
        if all(ds.union(i, j) for i, j in subset):
            count += 1
    return count


def build_basic(kind: str, size: int) -> Multigraph:
    """Simple cycle ``C_size``, path ``P_size`` or star ``S_size`` (``size`` vertices)."""
    if size < 1:
        raise GraphError("graph size must be at least 1")
    if kind == "cycle":
        if size < 3:
            raise GraphError("simple cycles need at least 3 vertices")
        return Multigraph(size, ((i, (i + 1) % size, 1) for i in range(size)))
    if kind == "path":
        return Multigraph(size, ((i, i + 1, 1) for i in range(size - 1)))
    if kind == "star":
        return Multigraph(size, ((0, i, 1) for i in range(1, size)))
    raise GraphError(f"unknown graph kind {kind!r}")


def cartesian_product(g: Multigraph, h: Multigraph) -> Multigraph:
    """Cartesian product; vertex ``(x, y)`` is numbered ``x * h.vertex_count + y``."""
    m = h.vertex_count
    edges = []
    for x, x2, w in g.edges():
        edges.extend((x * m + y, x2 * m + y, w) for y in range(m))
    for y, y2, w in h.edges():
        edges.extend((x * m + y, x * m + y2, w) for x in range(g.vertex_count))
    return Multigraph(g.vertex_count * m, edges)


def build_book_graph(n: int, k: int) -> Multigraph:
    """``B(n, k)``: the star on ``n + 1`` vertices times the path on ``k`` vertices."""
    if n < 2 or k < 1:
        raise GraphError(f"book graph needs n >= 2 and k >= 1, got n={n}, k={k}")
    return cartesian_product(build_basic("star", n + 1), build_basic("path", k))


def build_banana(lengths: Sequence[int]) -> Multigraph:
    """Two poles (vertices 0 and 1) joined by internally disjoint paths.

    Path ``i`` has ``lengths[i]`` edges, hence ``lengths[i] - 1`` interior
    vertices, numbered consecutively after the poles.
    """
    lengths = [int(x) for x in lengths]
    if len(lengths) < 2:
        raise GraphError("a banana graph needs at least 2 strands")
    if any(x < 1 for x in lengths):
        raise GraphError("strand lengths must be positive")
    edges = []
    nxt = 2
    for ell in lengths:
        prev = 0
        for _ in range(ell - 1):
            edges.append((prev, nxt, 1))
            prev = nxt
            nxt += 1
        edges.append((prev, 1, 1))
    return Multigraph(nxt, edges)
