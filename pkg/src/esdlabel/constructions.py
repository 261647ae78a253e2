"""Graph families with ready-made edge-sum distinguishing labelings.

Each labeler builds its graph with a fixed vertex numbering (documented per
family), produces the labeling, and re-verifies the ESD property before
returning, so a construction bug cannot leak an invalid result.  Families
whose canonical labeling provably does not exist return NoneExists instead.

Vertex numbering conventions:

  path(n)      1 - 2 - ... - n
  star(q)      center 1, leaves 2..q+1
  cycle(n)     1 - 2 - ... - n - 1
  kpq(p, q)    part {1..p}, part {p+1..p+q}, all cross edges
  tight(n)     hubs 1 and 2 joined to each other and to 3..n
  fan(n)       path 1 - ... - (n-1) plus apex n joined to every path vertex
  grid(k, l)   l rows of k vertices, row-major; i joins i+1 (same row) and i+k
  sunlet(k, p) k cycle vertices at indexes (i-1)p+1; each is the head of a
               path on the p-1 indexes that follow it
  complete(n)  all pairs
  tree(n)      random tree, uniform over labeled trees
"""

from __future__ import annotations

import functools
import heapq
import random
import re
from collections import deque
from dataclasses import dataclass

from .graph import Graph, Labeling, verify_esd
from . import search as search_mod


class ConstructionError(ValueError):
    """Raised for parameters outside a construction's domain."""


class UnsupportedByConstruction(ConstructionError):
    """Raised when no labeling rule is known for the given parameters."""


@dataclass(frozen=True)
class NoneExists:
    """Certified non-existence of the requested labeling."""

    reason: str

    def to_json(self) -> dict:
        return {"noneExists": True, "reason": self.reason}


@dataclass
class ConstructionResult:
    graph: Graph
    labeling: Labeling

    @property
    def label_pool_size(self) -> int:
        return self.labeling.pool_size

    @property
    def canonical(self) -> bool:
        return self.labeling.pool_size == self.graph.n

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "labeling": self.labeling.to_json(),
            "canonical": self.canonical,
            "labelPoolSize": self.label_pool_size,
        }


def _finish(graph: Graph, labeling: Labeling) -> ConstructionResult:
    res = verify_esd(graph, labeling, require_total=True)
    if not res.esd:
        raise AssertionError(f"construction produced a non-ESD labeling: {res.conflict}")
    return ConstructionResult(graph, labeling)


# ============================================================
# Family descriptions and graph builders
# ============================================================

FAMILY_KINDS = (
    "path",
    "star",
    "tree",
    "cycle",
    "kpq",
    "tight",
    "fan",
    "grid",
    "sunlet",
    "complete",
)

_ARITY = {
    "path": 1,
    "star": 1,
    "tree": 1,
    "cycle": 1,
    "kpq": 2,
    "tight": 1,
    "fan": 1,
    "grid": 2,
    "sunlet": 2,
    "complete": 1,
}


@dataclass(frozen=True)
class Family:
    kind: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "grid":
            return f"grid:{self.params[0]}x{self.params[1]}"
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}


def parse_family(text: str) -> Family:
    """Parse a family spec such as fan:8, grid:4x3, sunlet:5,2 or kpq:2,7."""
    m = re.fullmatch(r"([a-z]+):([0-9x,]+)", text.strip())
    if not m:
        raise ConstructionError(f"cannot parse family spec {text!r} (expected kind:params)")
    kind, rest = m.group(1), m.group(2)
    if kind not in FAMILY_KINDS:
        raise ConstructionError(f"unknown family {kind!r}; known: {', '.join(FAMILY_KINDS)}")
    parts = re.split(r"[x,]", rest)
    try:
        params = tuple(int(p) for p in parts)
    except ValueError:
        raise ConstructionError(f"non-integer parameter in family spec {text!r}")
    if len(params) != _ARITY[kind]:
        raise ConstructionError(
            f"family {kind!r} takes {_ARITY[kind]} parameter(s), got {len(params)}"
        )
    if any(p < 1 for p in params):
        raise ConstructionError(f"family parameters must be positive, got {params}")
    return Family(kind, params)


def _path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def _star_graph(q: int) -> Graph:
    return Graph(q + 1, [(1, i) for i in range(2, q + 2)])


def _cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ConstructionError(f"a cycle needs at least 3 vertices, got {n}")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph(n, edges)


def _kpq_graph(p: int, q: int) -> Graph:
    edges = [(i, p + j) for i in range(1, p + 1) for j in range(1, q + 1)]
    return Graph(p + q, edges)


def _tight_graph(n: int) -> Graph:
    if n < 2:
        raise ConstructionError(f"tight construction needs n >= 2, got {n}")
    edges = [(1, 2)]
    for y in range(3, n + 1):
        edges.append((1, y))
        edges.append((2, y))
    return Graph(n, edges)


def _fan_graph(n: int) -> Graph:
    if n < 2:
        raise ConstructionError(f"a fan needs at least 2 vertices, got {n}")
    edges = [(i, i + 1) for i in range(1, n - 1)]
    edges += [(i, n) for i in range(1, n)]
    return Graph(n, edges)


def _grid_graph(k: int, l: int) -> Graph:
    n = k * l
    edges = []
    for row in range(l):
        base = row * k
        for c in range(1, k):
            edges.append((base + c, base + c + 1))
    for i in range(1, n - k + 1):
        edges.append((i, i + k))
    return Graph(n, edges)


def _sunlet_graph(k: int, p: int) -> Graph:
    if k < 3:
        raise ConstructionError(f"the sunlet cycle needs k >= 3, got {k}")
    n = k * p
    heads = [(i - 1) * p + 1 for i in range(1, k + 1)]
    edges = [(heads[i], heads[i + 1]) for i in range(k - 1)] + [(heads[0], heads[-1])]
    for h in heads:
        for j in range(h, h + p - 1):
            edges.append((j, j + 1))
    return Graph(n, edges)


def _complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labeled tree on 1..n via its linear parent code."""
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(1, 2)])
    code = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in code:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)


def build_graph(family: Family | str, seed: int | None = None) -> Graph:
    """Build the graph for a family spec; `tree` draws from the given seed."""
    fam = parse_family(family) if isinstance(family, str) else family
    k = fam.kind
    if k == "path":
        return _path_graph(fam.params[0])
    if k == "star":
        return _star_graph(fam.params[0])
    if k == "tree":
        return random_tree(fam.params[0], random.Random(seed))
    if k == "cycle":
        return _cycle_graph(fam.params[0])
    if k == "kpq":
        return _kpq_graph(*fam.params)
    if k == "tight":
        return _tight_graph(fam.params[0])
    if k == "fan":
        return _fan_graph(fam.params[0])
    if k == "grid":
        return _grid_graph(*fam.params)
    if k == "sunlet":
        return _sunlet_graph(*fam.params)
    if k == "complete":
        return _complete_graph(fam.params[0])
    raise ConstructionError(f"unhandled family kind {k!r}")


# ============================================================
# Labelers
# ============================================================


def label_tree_bfs(g: Graph, root: int = 1) -> ConstructionResult:
    """Canonical labeling of a tree: label vertices 1..n in BFS order.

    Every non-root vertex joins the labeled part through its parent, and the
    new edge's weight strictly exceeds every weight seen so far, so all
    weights are distinct.  Neighbor ties break by ascending vertex id.
    """
    if not (1 <= root <= g.n):
        raise ConstructionError(f"root {root} outside 1..{g.n}")
    if not g.is_tree():
        raise ConstructionError("BFS labeling applies to trees only")
    order: dict[int, int] = {root: 1}
    queue = deque([root])
    nxt = 2
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in order:
                order[w] = nxt
                nxt += 1
                queue.append(w)
    return _finish(g, Labeling(g.n, order))


def label_cycle(n: int) -> ConstructionResult:
    """Canonical labeling of the cycle 1-2-...-n-1.

    Odd n uses the identity: consecutive sums are the odd numbers 3..2n-1
    and the closing edge weight n+1 is even.  Even n keeps the identity on
    1..n-2 and swaps the last two labels, leaving n and 2n-2 as the only
    even weights.
    """
    g = _cycle_graph(n)
    if n % 2 == 1:
        labels = list(range(1, n + 1))
    else:
        labels = list(range(1, n - 1)) + [n, n - 1]
    return _finish(g, Labeling.from_sequence(labels, n))


def label_complete_bipartite(p: int, q: int) -> ConstructionResult | NoneExists:
    """Canonical labeling of the complete bipartite graph, when one exists.

    With both parts of size >= 3 no assignment works: whichever part misses
    out on both of the labels {1, n}, two of its vertices carry labels
    differing by some amount that forces a repeated cross weight.  With a
    part of size 2 the only shape (up to automorphism) puts 1 and n on that
    part; a star (part of size 1) accepts every canonical labeling.  The
    labeling always applies to build_graph's numbering: part one is 1..p,
    part two is p+1..p+q, whichever is smaller.
    """
    g = _kpq_graph(p, q)
    n = p + q
    if min(p, q) >= 3:
        return NoneExists(
            f"K_{{{p},{q}}} has no canonical ESD labeling: with both parts of size >= 3 "
            "some part contains neither label 1 nor label n, forcing a repeated edge weight"
        )
    if min(p, q) == 1:
        return _finish(g, Labeling(n, {v: v for v in range(1, n + 1)}))
    small = range(1, p + 1) if p <= q else range(p + 1, n + 1)
    big = range(p + 1, n + 1) if p <= q else range(1, p + 1)
    assignment = {small[0]: 1, small[1]: n}
    for i, v in enumerate(big):
        assignment[v] = i + 2
    return _finish(g, Labeling(n, assignment))


def label_tight_extremal(n: int) -> ConstructionResult:
    """An n-vertex graph meeting the 2n-3 edge bound with equality, labeled.

    Two hubs get labels 1 and n; the remaining vertices take 2..n-1.  The
    hub-1 edges produce weights 3..n+1 (counting the hub-hub edge), the
    hub-n edges produce n+2..2n-1, so every weight in [3, 2n-1] occurs
    exactly once.
    """
    g = _tight_graph(n)
    assignment = {1: 1, 2: n}
    for y in range(3, n + 1):
        assignment[y] = y - 1
    return _finish(g, Labeling(n, assignment))


@functools.lru_cache(maxsize=None)
def _fan_labels(n: int) -> tuple[int, ...] | None:
    g = _fan_graph(n)
    out = search_mod.solve(g, search_mod.SearchConfig(label_pool_size=n))
    if out.status != search_mod.STATUS_FOUND:
        return None
    phi = out.labelings[0]
    return tuple(phi.assignment[v] for v in g.vertices())


def label_fan(n: int) -> ConstructionResult | NoneExists:
    """Canonical labeling of the fan (path plus apex) for n <= 7.

    A fan on n vertices has exactly 2n-3 edges, so a canonical labeling must
    realize every weight in [3, 2n-1]; from n = 8 on that is impossible and
    NoneExists is returned.  Small fans are solved by exhaustive search on
    first use and cached.
    """
    if n < 2:
        raise ConstructionError(f"a fan needs at least 2 vertices, got {n}")
    if n >= 8:
        return NoneExists(
            f"fan on {n} vertices has no canonical ESD labeling: its 2n-3 edges would "
            "need every weight in [3, 2n-1], and the forced placements around the apex "
            "collide from n = 8 on (confirmed by exhaustive search for small n)"
        )
    labels = _fan_labels(n)
    if labels is None:
        raise AssertionError(f"expected a canonical fan labeling for n={n}")
    return _finish(_fan_graph(n), Labeling.from_sequence(labels, n))


def label_grid(k: int, l: int) -> ConstructionResult:
    """Canonical labeling of the grid with rows of length k, l rows.

    Row-major identity labels make consecutive-in-row sums odd and vertical
    sums even; with an even row length the odd weights of distinct rows live
    in disjoint ranges.  When only the column count l is even, labels are
    written down columns instead (the same scheme on the transposed
    coordinates), so the returned graph always matches build_graph's vertex
    numbering for grid:kxl.  Both sides odd raises UnsupportedByConstruction.
    """
    if k % 2 == 1 and l % 2 == 1:
        if k == 1 and l == 1:
            return _finish(Graph(1, []), Labeling(1, {1: 1}))
        raise UnsupportedByConstruction(
            f"no labeling rule for a {k}x{l} grid: the row-major scheme needs an even side"
        )
    g = _grid_graph(k, l)
    n = k * l
    if k % 2 == 0:
        phi = Labeling.from_sequence(range(1, n + 1), n)
    else:
        assignment = {v: (v - 1) % k * l + (v - 1) // k + 1 for v in range(1, n + 1)}
        phi = Labeling(n, assignment)
    return _finish(g, phi)


def label_sunlet(k: int, p: int) -> ConstructionResult:
    """Labeling of the sunlet: a k-cycle whose vertices head paths of order p.

    The path at cycle position i occupies indexes (i-1)p+1 .. ip, the head
    being the cycle vertex itself, so the graph has kp vertices.  For odd k
    and even p the identity labeling is canonical: path edges get odd sums,
    cycle edges even sums, and the parities keep both families collision
    free.  For the remaining parameter shapes the cycle is labeled first
    (pool 1..k) and the outer vertices are labeled greedily: repeatedly give
    the next label, starting from 2k-1, to the unlabeled neighbor of the
    smallest-labeled vertex that has one.  Each step creates one edge whose
    weight exceeds all earlier weights; the measured pool size is whatever
    the greedy run used (for p >= 2 it lands on (p+1)k - 2).
    """
    g = _sunlet_graph(k, p)
    n = g.n
    if k % 2 == 1 and p % 2 == 0:
        return _finish(g, Labeling.from_sequence(range(1, n + 1), n))

    cycle = label_cycle(k).labeling
    heads = [(i - 1) * p + 1 for i in range(1, k + 1)]
    assignment = {heads[i]: cycle.assignment[i + 1] for i in range(k)}
    next_label = 2 * k - 1
    while len(assignment) < n:
        frontier = [
            (assignment[v], v)
            for v in assignment
            if any(w not in assignment for w in g.neighbors(v))
        ]
        _, u = min(frontier)
        x = min(w for w in g.neighbors(u) if w not in assignment)
        assignment[x] = next_label
        next_label += 1
    pool = max(assignment.values())
    return _finish(g, Labeling(pool, assignment))


def label_complete_fibonacci(n: int) -> ConstructionResult:
    """ESD labeling of the complete graph from the Fibonacci numbers.

    Vertex i gets the (i+1)-th Fibonacci number (1, 2, 3, 5, 8, ...), the
    pool being the next one after the largest label.  Any two distinct
    pairs of these labels have distinct sums: two distinct labels below a
    Fibonacci number sum to at most that number, so pairs with different
    maxima cannot collide, and pairs sharing a maximum differ in the other
    element.  Python integers are unbounded, so any n is accepted.
    """
    if n < 1:
        raise ConstructionError(f"complete graph needs n >= 1, got {n}")
    fibs = [0, 1]
    while len(fibs) < n + 2:
        fibs.append(fibs[-1] + fibs[-2])
    labels = [fibs[i + 1] for i in range(1, n + 1)]
    pool = fibs[n + 1]
    return _finish(_complete_graph(n), Labeling(pool, {i: labels[i - 1] for i in range(1, n + 1)}))


def construct(family: Family | str, seed: int | None = None) -> ConstructionResult | NoneExists:
    """Dispatch a family spec to its labeler."""
    fam = parse_family(family) if isinstance(family, str) else family
    k = fam.kind
    if k == "path":
        return label_tree_bfs(_path_graph(fam.params[0]), root=1)
    if k == "star":
        return label_tree_bfs(_star_graph(fam.params[0]), root=1)
    if k == "tree":
        return label_tree_bfs(random_tree(fam.params[0], random.Random(seed)), root=1)
    if k == "cycle":
        return label_cycle(fam.params[0])
    if k == "kpq":
        return label_complete_bipartite(*fam.params)
    if k == "tight":
        return label_tight_extremal(fam.params[0])
    if k == "fan":
        return label_fan(fam.params[0])
    if k == "grid":
        return label_grid(*fam.params)
    if k == "sunlet":
        return label_sunlet(*fam.params)
    if k == "complete":
        return label_complete_fibonacci(fam.params[0])
    raise ConstructionError(f"unhandled family kind {k!r}")
