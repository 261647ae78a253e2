"""Core data model: graphs, vertex labelings, and edge-weight bookkeeping.

A labeling assigns distinct labels from a pool {1..l} to the vertices of a
graph; each edge then carries the sum of its endpoint labels as a weight.
The labeling is edge-sum distinguishing (ESD) when all edge weights are
pairwise distinct.  A labeling with pool size equal to the vertex count is
called canonical.

Vertices are integers 1..n throughout.  Edges are stored as (u, v) pairs
with u < v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class InvalidGraphError(ValueError):
    """Raised when a graph description violates the basic shape rules."""


class InvalidLabelingError(ValueError):
    """Raised when a labeling assigns labels outside the pool or to bad keys."""


# ============================================================
# Graph
# ============================================================


class Graph:
    """Simple undirected graph on vertices 1..n, no loops or multi-edges."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if not isinstance(n, int) or n < 1:
            raise InvalidGraphError(f"vertex count must be a positive integer, got {n!r}")
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        for e in edges:
            try:
                u, v = e
            except (TypeError, ValueError):
                raise InvalidGraphError(f"edge {e!r} is not a pair")
            if not (isinstance(u, int) and isinstance(v, int)):
                raise InvalidGraphError(f"edge {e!r} has non-integer endpoints")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidGraphError(f"edge {e!r} leaves the vertex range 1..{n}")
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InvalidGraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            norm.append((u, v))
        norm.sort()
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        adj: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    # ---- basic queries ----

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(self._adj[v]) for v in self.vertices()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            return False
        return v in self._adj[u]

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = [False] * (self.n + 1)
        stack = [1]
        seen[1] = True
        count = 1
        while stack:
            u = stack.pop()
            for w in self._adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n

    def is_tree(self) -> bool:
        return self.edge_count == self.n - 1 and self.is_connected()

    def is_path_graph(self) -> bool:
        """True for P_n: a tree whose degrees never exceed 2."""
        if self.n == 1:
            return self.edge_count == 0
        if not self.is_tree():
            return False
        degs = sorted(self.degree(v) for v in self.vertices())
        return degs[0] == 1 and degs[1] == 1 and all(d == 2 for d in degs[2:])

    # ---- serialization ----

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise InvalidGraphError("graph JSON needs keys 'n' and 'edges'")
        return cls(data["n"], [tuple(e) for e in data["edges"]])

    # ---- dunder ----

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# ============================================================
# Labeling
# ============================================================


class Labeling:
    """Partial or total assignment of pool labels {1..pool_size} to vertices.

    The container checks only the label range; injectivity is a property the
    verifier reports on, so duplicate labels are representable here.
    """

    __slots__ = ("pool_size", "assignment")

    def __init__(self, pool_size: int, assignment: dict[int, int] | None = None):
        if not isinstance(pool_size, int) or pool_size < 1:
            raise InvalidLabelingError(f"pool size must be a positive integer, got {pool_size!r}")
        self.pool_size = pool_size
        self.assignment: dict[int, int] = {}
        if assignment:
            for v, a in assignment.items():
                if not isinstance(v, int) or v < 1:
                    raise InvalidLabelingError(f"vertex key {v!r} is not a positive integer")
                if not isinstance(a, int) or not (1 <= a <= pool_size):
                    raise InvalidLabelingError(
                        f"label {a!r} for vertex {v} falls outside the pool 1..{pool_size}"
                    )
                self.assignment[v] = a

    def get(self, v: int) -> Optional[int]:
        return self.assignment.get(v)

    def assigned_vertices(self) -> list[int]:
        return sorted(self.assignment)

    def labels_used(self) -> list[int]:
        return sorted(self.assignment.values())

    def is_total_on(self, g: Graph) -> bool:
        return all(v in self.assignment for v in g.vertices())

    def is_injective(self) -> bool:
        vals = list(self.assignment.values())
        return len(vals) == len(set(vals))

    def to_json(self) -> dict:
        return {"l": self.pool_size, "labels": {str(v): a for v, a in sorted(self.assignment.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "Labeling":
        if not isinstance(data, dict) or "l" not in data or "labels" not in data:
            raise InvalidLabelingError("labeling JSON needs keys 'l' and 'labels'")
        raw = data["labels"]
        if not isinstance(raw, dict):
            raise InvalidLabelingError("'labels' must be an object mapping vertex to label")
        assignment = {}
        for k, a in raw.items():
            try:
                v = int(k)
            except (TypeError, ValueError):
                raise InvalidLabelingError(f"vertex key {k!r} is not an integer")
            assignment[v] = a
        return cls(data["l"], assignment)

    @classmethod
    def from_sequence(cls, labels: Iterable[int], pool_size: int | None = None) -> "Labeling":
        """Labeling from a sequence where position i (0-based) labels vertex i+1."""
        seq = list(labels)
        l = pool_size if pool_size is not None else (max(seq) if seq else 1)
        return cls(l, {i + 1: a for i, a in enumerate(seq)})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Labeling)
            and self.pool_size == other.pool_size
            and self.assignment == other.assignment
        )

    def __hash__(self) -> int:
        return hash((self.pool_size, tuple(sorted(self.assignment.items()))))

    def __repr__(self) -> str:
        return f"Labeling(l={self.pool_size}, {self.assignment})"


def identity_labeling(n: int) -> Labeling:
    """The canonical assignment v -> v on vertices 1..n."""
    return Labeling(n, {v: v for v in range(1, n + 1)})


# ============================================================
# Weight occupancy
# ============================================================


class WeightSet:
    """Dense occupancy set for edge weights in [3, 2l-1], bitset-backed.

    Meant for the bounded pools the solver and the game engine work with;
    verification of huge pools uses an ordinary hash set instead.
    """

    __slots__ = ("mask",)

    def __init__(self, mask: int = 0):
        self.mask = mask

    def add(self, w: int) -> bool:
        """Add weight w; returns False when w was already occupied."""
        bit = 1 << w
        if self.mask & bit:
            return False
        self.mask |= bit
        return True

    def discard(self, w: int) -> None:
        self.mask &= ~(1 << w)

    def __contains__(self, w: int) -> bool:
        return bool(self.mask & (1 << w))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def weights(self) -> Iterator[int]:
        m = self.mask
        while m:
            bit = m & -m
            yield bit.bit_length() - 1
            m ^= bit

    def copy(self) -> "WeightSet":
        return WeightSet(self.mask)

    def __repr__(self) -> str:
        return f"WeightSet({sorted(self.weights())})"


# ============================================================
# Verification
# ============================================================


@dataclass(frozen=True)
class Conflict:
    """First witness that a labeling fails the ESD property.

    kind is "duplicate-label" (vertices carry the same label) or
    "weight-clash" (two edges share a weight).
    """

    kind: str
    value: int
    vertices: tuple[int, int] | None = None
    edges: tuple[tuple[int, int], tuple[int, int]] | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "value": self.value}
        if self.vertices is not None:
            out["vertices"] = list(self.vertices)
        if self.edges is not None:
            out["edges"] = [list(self.edges[0]), list(self.edges[1])]
        return out


@dataclass(frozen=True)
class VerifyResult:
    esd: bool
    conflict: Conflict | None = None

    def to_json(self) -> dict:
        out: dict = {"esd": self.esd}
        if self.conflict is not None:
            out["conflict"] = self.conflict.to_json()
        return out


def _check_domain(g: Graph, phi: Labeling) -> None:
    for v in phi.assignment:
        if v > g.n:
            raise InvalidLabelingError(f"labeling mentions vertex {v}, graph has only 1..{g.n}")


def verify_esd(g: Graph, phi: Labeling, require_total: bool = False) -> VerifyResult:
    """Check the edge-sum distinguishing property of phi on g.

    Edges with an unassigned endpoint are ignored, so a partial labeling is
    judged on the edges it fully covers.  With require_total=True an
    incomplete labeling is rejected up front.

    Returns a VerifyResult; the first conflict found (scanning vertices, then
    edges in sorted order) is reported.  Labels outside the pool or on
    foreign vertices raise InvalidLabelingError.
    """
    _check_domain(g, phi)
    if require_total and not phi.is_total_on(g):
        missing = next(v for v in g.vertices() if v not in phi.assignment)
        raise InvalidLabelingError(f"labeling is not total: vertex {missing} is unassigned")

    by_label: dict[int, int] = {}
    for v in sorted(phi.assignment):
        a = phi.assignment[v]
        if a in by_label:
            return VerifyResult(False, Conflict("duplicate-label", a, vertices=(by_label[a], v)))
        by_label[a] = v

    asg = phi.assignment
    by_weight: dict[int, tuple[int, int]] = {}
    for u, v in g.edges:
        au = asg.get(u)
        av = asg.get(v)
        if au is None or av is None:
            continue
        w = au + av
        prev = by_weight.get(w)
        if prev is not None:
            return VerifyResult(False, Conflict("weight-clash", w, edges=(prev, (u, v))))
        by_weight[w] = (u, v)
    return VerifyResult(True)


def edge_weights(g: Graph, phi: Labeling) -> list[tuple[tuple[int, int], int]]:
    """Weights of all fully-labeled edges, in lexicographic edge order."""
    _check_domain(g, phi)
    asg = phi.assignment
    out = []
    for u, v in g.edges:
        au = asg.get(u)
        av = asg.get(v)
        if au is not None and av is not None:
            out.append(((u, v), au + av))
    return out


def canonical_feasible(g: Graph) -> bool:
    """Edge-count test a graph must pass to admit a canonical ESD labeling.

    With pool {1..n} every edge weight lies in [3, 2n-1], a range of size
    2n-3, so more than 2n-3 edges rule the labeling out.  The test is
    necessary, not sufficient.  A single-vertex graph passes trivially.
    """
    if g.n == 1:
        return True
    return g.edge_count <= 2 * g.n - 3


# ============================================================
# Labeling isomorphism
# ============================================================


def labelings_isomorphic(g: Graph, phi1: Labeling, phi2: Labeling) -> bool:
    """Whether phi1 and phi2 differ only by an automorphism of g.

    Both labelings must be total and injective.  The map f sending v to the
    phi2-preimage of phi1(v) is the only candidate satisfying
    phi1(v) = phi2(f(v)), so the test reduces to checking that f exists and
    preserves adjacency.  Runs in O(n + m) at any size.
    """
    for phi in (phi1, phi2):
        _check_domain(g, phi)
        if not phi.is_total_on(g):
            raise InvalidLabelingError("labeling isomorphism needs total labelings")
        if not phi.is_injective():
            raise InvalidLabelingError("labeling isomorphism needs injective labelings")

    inv2 = {a: v for v, a in phi2.assignment.items()}
    f: dict[int, int] = {}
    for v in g.vertices():
        target = inv2.get(phi1.assignment[v])
        if target is None:
            return False
        f[v] = target
    # f is injective (composition of injections); with equal label sets it is
    # a bijection on 1..n.  An edge-preserving bijection on a finite graph is
    # an automorphism since edge counts match.
    for u, v in g.edges:
        if not g.has_edge(f[u], f[v]):
            return False
    return True
