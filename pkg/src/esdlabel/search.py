"""Exhaustive search for edge-sum distinguishing labelings.

Backtracking over vertex -> label assignments with exact forward pruning:
the candidate kernel keeps, per free vertex, precisely the labels that do
not repeat a weight, so a branch dies as soon as some vertex has no label
left.  With pool {1..l} every weight lives in [3, 2l-1]; a graph with more
than 2l-3 edges is rejected without search.

Node counts are deterministic for a fixed config in single-task mode, which
the tests rely on.  With jobs > 1 the root vertex's label choices fan out
to worker processes and only the merged answer is deterministic.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .candidates import CandidateState, iter_labels
from .graph import Graph, Labeling, labelings_isomorphic

MODE_FIRST = "first"
MODE_COUNT = "count"
MODE_ENUM_ISO = "enumerateUpToIso"
MODES = (MODE_FIRST, MODE_COUNT, MODE_ENUM_ISO)

ORDER_MOST_CONSTRAINED = "mostConstrained"
ORDER_STATIC_DEGREE = "staticDegree"
ORDERINGS = (ORDER_MOST_CONSTRAINED, ORDER_STATIC_DEGREE)

STATUS_FOUND = "found"
STATUS_EXHAUSTED = "exhaustedNoneExists"
STATUS_ABORTED = "aborted"

DEFAULT_NODE_LIMIT = 100_000_000


class SearchAborted(RuntimeError):
    """Raised by helpers (e.g. min_pool_size) when a sub-search hit a limit."""


@dataclass(frozen=True)
class SearchConfig:
    label_pool_size: int
    mode: str = MODE_FIRST
    node_limit: int | None = DEFAULT_NODE_LIMIT
    time_limit: float | None = None
    ordering: str = ORDER_MOST_CONSTRAINED
    jobs: int = 1

    def __post_init__(self):
        if self.label_pool_size < 1:
            raise ValueError("label_pool_size must be positive")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.ordering not in ORDERINGS:
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive when set")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass
class SearchOutcome:
    status: str
    labelings: list[Labeling] = field(default_factory=list)
    nodes_visited: int = 0
    certificate_note: str = ""

    @property
    def count(self) -> int:
        return len(self.labelings)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "labelings": [phi.to_json() for phi in self.labelings],
            "nodes": self.nodes_visited,
            "note": self.certificate_note,
        }


class _Abort(Exception):
    pass


class _Searcher:
    """One single-threaded backtracking run."""

    def __init__(self, g: Graph, cfg: SearchConfig):
        self.g = g
        self.cfg = cfg
        self.state = CandidateState(g, cfg.label_pool_size)
        self.nodes = 0
        self.found: list[dict[int, int]] = []
        self.deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit
        if cfg.ordering == ORDER_STATIC_DEGREE:
            self.static_order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
        else:
            self.static_order = None

    def pick_vertex(self) -> int:
        st = self.state
        if self.static_order is not None:
            for v in self.static_order:
                if v not in st.assignment:
                    return v
            raise AssertionError("pick_vertex called on a total assignment")
        best_v = 0
        best_key = None
        for v in self.g.vertices():
            if v in st.assignment:
                continue
            key = (st.cand[v].bit_count(), -self.g.degree(v), v)
            if best_key is None or key < best_key:
                best_key = key
                best_v = v
        return best_v

    def run(self, preassign: list[tuple[int, int]] | None = None) -> bool:
        """Returns True when mode=first found a labeling (early stop)."""
        if preassign:
            for v, a in preassign:
                if not self.state.is_legal(v, a):
                    return False
                self.state.assign(v, a)
                if self._dead():
                    return False
        return self._recurse()

    def _dead(self) -> bool:
        st = self.state
        for v in self.g.vertices():
            if v not in st.assignment and not st.cand[v]:
                return True
        return False

    def _recurse(self) -> bool:
        st = self.state
        if st.is_total():
            self.found.append(dict(st.assignment))
            return self.cfg.mode == MODE_FIRST
        v = self.pick_vertex()
        for a in iter_labels(st.cand[v]):
            self.nodes += 1
            if self.cfg.node_limit is not None and self.nodes > self.cfg.node_limit:
                raise _Abort("node limit exceeded")
            if self.deadline is not None and self.nodes % 1024 == 0:
                if time.monotonic() > self.deadline:
                    raise _Abort("time limit exceeded")
            rec = st.assign(v, a)
            try:
                if not self._dead():
                    if self._recurse():
                        return True
            finally:
                st.undo(rec)
        return False


def _quotient_by_isomorphism(g: Graph, labelings: list[Labeling]) -> list[Labeling]:
    reps: list[Labeling] = []
    for phi in labelings:
        if not any(labelings_isomorphic(g, phi, r) for r in reps):
            reps.append(phi)
    return reps


def _outcome_from_run(g: Graph, cfg: SearchConfig, searcher: _Searcher, aborted: str | None) -> SearchOutcome:
    labelings = [Labeling(cfg.label_pool_size, asg) for asg in searcher.found]
    labelings.sort(key=lambda p: tuple(p.assignment[v] for v in g.vertices()))
    if cfg.mode == MODE_ENUM_ISO:
        labelings = _quotient_by_isomorphism(g, labelings)
    if aborted is not None:
        status = STATUS_ABORTED
        note = aborted
    elif labelings:
        status = STATUS_FOUND
        note = ""
    else:
        status = STATUS_EXHAUSTED
        note = "search space exhausted"
    return SearchOutcome(status, labelings, searcher.nodes, note)


def _solve_single(g: Graph, cfg: SearchConfig, preassign: list[tuple[int, int]] | None = None) -> SearchOutcome:
    searcher = _Searcher(g, cfg)
    aborted = None
    try:
        searcher.run(preassign)
    except _Abort as exc:
        aborted = str(exc)
    return _outcome_from_run(g, cfg, searcher, aborted)


def _branch_worker(args) -> dict:
    graph_json, cfg_kwargs, v0, a = args
    g = Graph.from_json(graph_json)
    cfg = SearchConfig(**cfg_kwargs)
    out = _solve_single(g, cfg, preassign=[(v0, a)])
    return out.to_json()


def solve(g: Graph, cfg: SearchConfig, *, use_bound_reject: bool = True) -> SearchOutcome:
    """Search for ESD labelings of g drawing labels from {1..cfg.label_pool_size}.

    Mode "first" stops at one labeling, "count" collects every labeling, and
    "enumerateUpToIso" collects one representative per class of labelings
    that differ by a graph automorphism.  use_bound_reject=False disables
    the 2l-3 edge-count shortcut so tests can cross-check it against a full
    exhaustion.
    """
    l = cfg.label_pool_size
    if l < g.n:
        return SearchOutcome(
            STATUS_EXHAUSTED, [], 0, f"label pool {l} smaller than vertex count {g.n}"
        )
    if use_bound_reject and g.edge_count > 0 and g.edge_count > 2 * l - 3:
        return SearchOutcome(
            STATUS_EXHAUSTED,
            [],
            0,
            f"rejected: {g.edge_count} edges exceed the 2l-3 = {2 * l - 3} distinct weights"
            f" available from pool {l}",
        )

    if cfg.jobs <= 1 or g.n == 0:
        return _solve_single(g, cfg)
    return _solve_parallel(g, cfg)


def _solve_parallel(g: Graph, cfg: SearchConfig) -> SearchOutcome:
    root_cfg = replace(cfg, jobs=1)
    probe = _Searcher(g, root_cfg)
    v0 = probe.pick_vertex()
    cfg_kwargs = {
        "label_pool_size": cfg.label_pool_size,
        "mode": cfg.mode,
        "node_limit": cfg.node_limit,
        "time_limit": cfg.time_limit,
        "ordering": cfg.ordering,
        "jobs": 1,
    }
    tasks = [(g.to_json(), cfg_kwargs, v0, a) for a in range(1, cfg.label_pool_size + 1)]
    results: list[dict] = []
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        for res in pool.map(_branch_worker, tasks):
            results.append(res)

    nodes = sum(r["nodes"] for r in results) + len(tasks)
    labelings: list[Labeling] = []
    for r in results:
        labelings.extend(Labeling.from_json(pj) for pj in r["labelings"])
    labelings.sort(key=lambda p: tuple(p.assignment[v] for v in g.vertices()))
    if cfg.mode == MODE_FIRST and labelings:
        labelings = labelings[:1]
    if cfg.mode == MODE_ENUM_ISO:
        labelings = _quotient_by_isomorphism(g, labelings)

    aborted_notes = [r["note"] for r in results if r["status"] == STATUS_ABORTED]
    if labelings and cfg.mode == MODE_FIRST:
        return SearchOutcome(STATUS_FOUND, labelings, nodes, "")
    if aborted_notes:
        return SearchOutcome(STATUS_ABORTED, labelings, nodes, aborted_notes[0])
    if labelings:
        return SearchOutcome(STATUS_FOUND, labelings, nodes, "")
    return SearchOutcome(STATUS_EXHAUSTED, [], nodes, "search space exhausted")


def enumerate_up_to_iso(g: Graph, label_pool_size: int, **cfg_kwargs) -> SearchOutcome:
    """All ESD labelings of g from pool {1..l}, one per automorphism class."""
    cfg = SearchConfig(label_pool_size=label_pool_size, mode=MODE_ENUM_ISO, **cfg_kwargs)
    return solve(g, cfg)


def min_pool_size(g: Graph, l_max: int, **cfg_kwargs) -> int | None:
    """Smallest pool size in [n, l_max] admitting an ESD labeling, else None.

    Raises SearchAborted when an underlying search hit its node or time
    limit, since a skipped level would make the answer unreliable.
    """
    for l in range(max(g.n, 1), l_max + 1):
        cfg = SearchConfig(label_pool_size=l, mode=MODE_FIRST, **cfg_kwargs)
        out = solve(g, cfg)
        if out.status == STATUS_ABORTED:
            raise SearchAborted(f"search aborted at pool size {l}: {out.certificate_note}")
        if out.status == STATUS_FOUND:
            return l
    return None
