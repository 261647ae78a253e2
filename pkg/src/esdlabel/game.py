"""Two-player edge-sum distinguishing labeling game.

Alice and Bob alternately place unused labels from {1..l} on free vertices;
a move is legal when every edge weight stays unique.  The game ends when
the labeling is total (Alice wins) or no legal move remains (Bob wins).
Alice starts unless the state says otherwise.  The game keeps going as long
as any legal move exists anywhere, even if some vertex can no longer be
labeled.

The candidate kernel gives each free vertex its exact set of placeable
labels, which doubles as Alice's bookkeeping: if those sets are all
nonempty before every move, any of her picks is legal, and a pool size of
(d^2+1)n + d*C(n-1,2) (d the maximum degree) keeps them nonempty no matter
what Bob does.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .candidates import CandidateState, iter_labels
from .graph import Graph

ALICE = "Alice"
BOB = "Bob"

ONGOING = "ongoing"
ALICE_WON = "AliceWon"
BOB_WON = "BobWon"


class IllegalMoveError(ValueError):
    """A rejected move, carrying a structured reason.

    kind is one of "occupied", "used-label", "label-out-of-pool",
    "weight-clash" or "game-over"; weight clashes name both edges.
    """

    def __init__(self, kind: str, message: str, *, vertex: int | None = None,
                 label: int | None = None, weight: int | None = None,
                 edges: tuple[tuple[int, int], tuple[int, int]] | None = None):
        super().__init__(message)
        self.kind = kind
        self.vertex = vertex
        self.label = label
        self.weight = weight
        self.edges = edges

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "message": str(self)}
        if self.vertex is not None:
            out["v"] = self.vertex
        if self.label is not None:
            out["label"] = self.label
        if self.weight is not None:
            out["weight"] = self.weight
        if self.edges is not None:
            out["edges"] = [list(self.edges[0]), list(self.edges[1])]
        return out


class CandidateExhausted(RuntimeError):
    """Alice's bookkeeping ran dry: every free vertex has an empty label set."""


class StrategyFault(RuntimeError):
    """A strategy returned an illegal or missing move."""


class GameGuardError(ValueError):
    """Game-tree solving was asked for a position above its size guard."""


@dataclass(frozen=True)
class Move:
    vertex: int
    label: int

    def to_json(self) -> dict:
        return {"v": self.vertex, "label": self.label}


class GameState:
    """Immutable-by-convention game position; apply_move returns a new one."""

    __slots__ = ("graph", "pool_size", "cand", "turn", "status")

    def __init__(self, graph: Graph, pool_size: int, cand: CandidateState, turn: str, status: str):
        self.graph = graph
        self.pool_size = pool_size
        self.cand = cand
        self.turn = turn
        self.status = status

    @classmethod
    def new(cls, graph: Graph, pool_size: int, bob_starts: bool = False) -> "GameState":
        if pool_size < 1:
            raise ValueError("pool size must be positive")
        cand = CandidateState(graph, pool_size)
        return cls(graph, pool_size, cand, BOB if bob_starts else ALICE, ONGOING)

    # ---- views ----

    @property
    def assignment(self) -> dict[int, int]:
        return dict(self.cand.assignment)

    def label_of(self, v: int) -> int | None:
        return self.cand.assignment.get(v)

    def used_weights(self) -> list[int]:
        out = []
        m = self.cand.used_weights
        while m:
            bit = m & -m
            out.append(bit.bit_length() - 1)
            m ^= bit
        return out

    def candidate_labels(self, v: int) -> list[int]:
        return list(iter_labels(self.cand.legal_mask(v)))

    def free_vertices(self) -> list[int]:
        return self.cand.free_vertices()

    def is_over(self) -> bool:
        return self.status != ONGOING


def legal_moves(state: GameState) -> list[Move]:
    """Every legal (vertex, label) pair, ascending by vertex then label."""
    if state.status != ONGOING:
        return []
    out = []
    for v in state.graph.vertices():
        mask = state.cand.legal_mask(v)
        if mask and state.cand.is_free(v):
            for a in iter_labels(mask):
                out.append(Move(v, a))
    return out


def _diagnose(state: GameState, move: Move) -> IllegalMoveError:
    v, a = move.vertex, move.label
    g = state.graph
    asg = state.cand.assignment
    if not (1 <= v <= g.n):
        return IllegalMoveError("occupied", f"vertex {v} is not a vertex of the graph", vertex=v)
    if v in asg:
        return IllegalMoveError("occupied", f"vertex {v} already carries label {asg[v]}", vertex=v)
    if not (1 <= a <= state.pool_size):
        return IllegalMoveError(
            "label-out-of-pool", f"label {a} falls outside the pool 1..{state.pool_size}",
            label=a,
        )
    if state.cand.used_labels & (1 << a):
        return IllegalMoveError("used-label", f"label {a} is already placed", label=a)
    # weight clash: find the offending neighbor and the edge that owns the weight
    weight_owner: dict[int, tuple[int, int]] = {}
    for x, y in g.edges:
        ax, ay = asg.get(x), asg.get(y)
        if ax is not None and ay is not None:
            weight_owner[ax + ay] = (x, y)
    for u in g.neighbors(v):
        fu = asg.get(u)
        if fu is None:
            continue
        w = a + fu
        if w in weight_owner:
            new_edge = (min(u, v), max(u, v))
            return IllegalMoveError(
                "weight-clash",
                f"edge {new_edge} would repeat weight {w} of edge {weight_owner[w]}",
                vertex=v, label=a, weight=w, edges=(weight_owner[w], new_edge),
            )
    return IllegalMoveError("occupied", f"move {move} rejected for an unknown reason", vertex=v)


def apply_move(state: GameState, move: Move) -> GameState:
    """Apply a legal move for the side to move; raises IllegalMoveError otherwise."""
    if state.status != ONGOING:
        raise IllegalMoveError("game-over", f"game already ended: {state.status}")
    v, a = move.vertex, move.label
    if not (1 <= v <= state.graph.n) or not state.cand.is_free(v) or not (
        1 <= a <= state.pool_size
    ) or not (state.cand.legal_mask(v) & (1 << a)):
        raise _diagnose(state, move)

    child = state.cand.child(v, a)
    if child.is_total():
        status, turn = ALICE_WON, state.turn
    elif not child.has_any_move():
        status, turn = BOB_WON, state.turn
    else:
        status = ONGOING
        turn = BOB if state.turn == ALICE else ALICE
    return GameState(state.graph, state.pool_size, child, turn, status)


# ============================================================
# Alice's candidate-set machinery
# ============================================================


def alice_candidate_strategy(state: GameState) -> Move:
    """Lowest-index free vertex with a nonempty candidate set, smallest label.

    Raises CandidateExhausted when every free vertex's set is empty, which
    can only happen below the guaranteed pool bound (and then the position
    is already lost for Alice).
    """
    for v in state.graph.vertices():
        if not state.cand.is_free(v):
            continue
        mask = state.cand.legal_mask(v)
        if mask:
            return Move(v, (mask & -mask).bit_length() - 1)
    raise CandidateExhausted("every free vertex has an empty candidate set")


def alice_bound(g: Graph) -> int:
    """Pool size from which Alice wins regardless of Bob's play.

    General graphs: (d^2 + 1)n + d * C(n-1, 2) with d the maximum degree,
    budgeting the worst-case deletions from any single candidate set over a
    whole game.  For paths a sharper 5n budget applies; the smaller of the
    two is returned for graphs recognized as paths.
    """
    n = g.n
    d = g.max_degree()
    general = (d * d + 1) * n + d * math.comb(n - 1, 2)
    if g.is_path_graph():
        return min(general, 5 * n)
    return general


# ============================================================
# Strategies
# ============================================================


class Strategy:
    """A move chooser; must return a legal move whenever one exists."""

    kind = "abstract"

    def choose(self, state: GameState) -> Move:
        raise NotImplementedError


class AliceCandidateSetStrategy(Strategy):
    kind = "aliceCandidateSet"

    def choose(self, state: GameState) -> Move:
        return alice_candidate_strategy(state)


class UniformRandomStrategy(Strategy):
    """Uniform over legal moves, selected by candidate-mask popcounts so no
    per-ply move list is ever materialized (pools can be large)."""

    kind = "uniformRandom"

    def __init__(self, seed: int | None = None):
        self.rng = random.Random(seed)

    def choose(self, state: GameState) -> Move:
        cand = state.cand
        counts = [(v, cand.legal_mask(v).bit_count()) for v in state.graph.vertices()]
        total = sum(c for _, c in counts)
        if total == 0:
            raise StrategyFault("uniformRandom asked to move with no legal moves")
        k = self.rng.randrange(total)
        for v, c in counts:
            if k >= c:
                k -= c
                continue
            mask = cand.legal_mask(v)
            while k:
                mask &= mask - 1
                k -= 1
            return Move(v, (mask & -mask).bit_length() - 1)
        raise AssertionError("unreachable: k indexed past the last legal move")


class GreedyBlockerStrategy(Strategy):
    """Picks the legal move that minimizes the candidates left for everyone.

    A blunt spoiler: small candidate mass means little room for the rest of
    the game.  Ties break toward the lexicographically smallest move.
    """

    kind = "greedyBlocker"

    def choose(self, state: GameState) -> Move:
        best: Move | None = None
        best_mass = -1
        for mv in legal_moves(state):
            child = state.cand.child(mv.vertex, mv.label)
            mass = 0
            for v in state.graph.vertices():
                if v not in child.assignment:
                    mass += child.cand[v].bit_count()
            if best is None or mass < best_mass:
                best = mv
                best_mass = mass
        if best is None:
            raise StrategyFault("greedyBlocker asked to move with no legal moves")
        return best


class ExhaustiveOptimalStrategy(Strategy):
    """Plays perfectly by solving the remaining game tree (small games only)."""

    kind = "exhaustiveOptimal"

    def __init__(self, max_n: int = 6, max_l: int = 12):
        self.max_n = max_n
        self.max_l = max_l
        self._solver: _MinimaxSolver | None = None

    def choose(self, state: GameState) -> Move:
        if state.graph.n > self.max_n or state.pool_size > self.max_l:
            raise GameGuardError(
                f"game tree solving guarded to n <= {self.max_n}, l <= {self.max_l}; "
                f"got n={state.graph.n}, l={state.pool_size}"
            )
        if self._solver is None or self._solver.g is not state.graph or self._solver.l != state.pool_size:
            self._solver = _MinimaxSolver(state.graph, state.pool_size)
        solver = self._solver
        moves = legal_moves(state)
        if not moves:
            raise StrategyFault("exhaustiveOptimal asked to move with no legal moves")
        mover = state.turn
        next_turn = BOB if mover == ALICE else ALICE
        for mv in moves:
            child = state.cand.child(mv.vertex, mv.label)
            alice_wins = solver.value(child, next_turn)
            if (mover == ALICE) == alice_wins:
                return mv
        return moves[0]


STRATEGY_KINDS = ("aliceCandidateSet", "uniformRandom", "greedyBlocker", "exhaustiveOptimal")


def make_strategy(kind: str, seed: int | None = None,
                  max_n: int = 6, max_l: int = 12) -> Strategy:
    if kind == "aliceCandidateSet":
        return AliceCandidateSetStrategy()
    if kind == "uniformRandom":
        return UniformRandomStrategy(seed)
    if kind == "greedyBlocker":
        return GreedyBlockerStrategy()
    if kind == "exhaustiveOptimal":
        return ExhaustiveOptimalStrategy(max_n, max_l)
    raise ValueError(f"unknown strategy kind {kind!r}; known: {', '.join(STRATEGY_KINDS)}")


# ============================================================
# Playing and solving
# ============================================================


@dataclass
class GameRecord:
    winner: str
    moves: list[Move]
    final_state: GameState

    def transcript_json(self) -> dict:
        return {"moves": [m.to_json() for m in self.moves], "winner": self.winner}


def play_game(g: Graph, pool_size: int, alice: Strategy, bob: Strategy,
              bob_starts: bool = False) -> GameRecord:
    """Run one full game; returns the winner and the move transcript.

    A strategy that returns an illegal move (or raises) while legal moves
    exist is reported as a StrategyFault naming the offender.
    """
    state = GameState.new(g, pool_size, bob_starts=bob_starts)
    moves: list[Move] = []
    while state.status == ONGOING:
        strat = alice if state.turn == ALICE else bob
        try:
            mv = strat.choose(state)
        except (CandidateExhausted, StrategyFault, GameGuardError):
            raise
        except Exception as exc:  # noqa: BLE001 - surface the guilty strategy
            raise StrategyFault(f"strategy {strat.kind} failed: {exc}") from exc
        try:
            state = apply_move(state, mv)
        except IllegalMoveError as exc:
            raise StrategyFault(f"strategy {strat.kind} returned illegal move {mv}: {exc}") from exc
        moves.append(mv)
    winner = ALICE if state.status == ALICE_WON else BOB
    return GameRecord(winner, moves, state)


def replay_transcript(g: Graph, pool_size: int, transcript,
                      bob_starts: bool = False) -> GameState:
    """Re-apply a transcript move by move, validating each one.

    Accepts a {"moves": [...]} dict, a list of {"v", "label"} dicts, or a
    list of Move objects, so JSON transcripts replay without conversion.
    """
    if isinstance(transcript, dict):
        transcript = transcript.get("moves", [])
    state = GameState.new(g, pool_size, bob_starts=bob_starts)
    for mv in transcript:
        if isinstance(mv, dict):
            mv = Move(mv["v"], mv["label"])
        state = apply_move(state, mv)
    return state


@dataclass
class GameSolution:
    winner: str
    strategy_tree_size: int

    def to_json(self) -> dict:
        return {"winner": self.winner, "strategyTreeSize": self.strategy_tree_size}


class _MinimaxSolver:
    """Memoized win/lose evaluation over assignment states."""

    def __init__(self, g: Graph, l: int):
        self.g = g
        self.l = l
        self.memo: dict[tuple, bool] = {}

    def value(self, cand: CandidateState, turn: str) -> bool:
        """True when Alice wins from this position with `turn` to move."""
        if cand.is_total():
            return True
        if not cand.has_any_move():
            return False
        key = (frozenset(cand.assignment.items()), turn)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        next_turn = BOB if turn == ALICE else ALICE
        result = turn != ALICE  # Alice: any winning child; Bob: all children winning
        for v in self.g.vertices():
            if not cand.is_free(v):
                continue
            for a in iter_labels(cand.legal_mask(v)):
                rec = cand.assign(v, a)
                try:
                    sub = self.value(cand, next_turn)
                finally:
                    cand.undo(rec)
                if turn == ALICE and sub:
                    result = True
                    break
                if turn == BOB and not sub:
                    result = False
                    break
            else:
                continue
            break
        self.memo[key] = result
        return result


def solve_game(g: Graph, pool_size: int, *, bob_starts: bool = False,
               max_n: int = 6, max_l: int = 12) -> GameSolution:
    """Winner under optimal play from the empty position.

    Guarded by max_n and max_l because the memo table grows with the number
    of reachable assignments; raise the guards explicitly for bigger runs.
    """
    if g.n > max_n or pool_size > max_l:
        raise GameGuardError(
            f"solve_game guarded to n <= {max_n}, l <= {max_l}; "
            f"got n={g.n}, l={pool_size}"
        )
    solver = _MinimaxSolver(g, pool_size)
    cand = CandidateState(g, pool_size)
    alice_wins = solver.value(cand, BOB if bob_starts else ALICE)
    return GameSolution(ALICE if alice_wins else BOB, len(solver.memo))
