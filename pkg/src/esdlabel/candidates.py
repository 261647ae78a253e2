"""Incremental candidate-label tracking shared by the solver and the game.

For every free vertex v the kernel maintains the exact set of labels that
could legally be placed on v right now:

    S_v = { a unused : a + phi(u) is a fresh weight for every labeled
            neighbor u of v }

Sets are bitmasks (bit a = label a), so copying a state is cheap and the
update loops are plain integer arithmetic.  After assigning label a to
vertex v three deletions keep every S exact:

  1. drop a from every set (labels are used once);
  2. every free neighbor y of v drops any label that would repeat a weight
     that existed before this move across the new edge yv;
  3. every free vertex z with a labeled neighbor z' drops labels that would
     repeat one of the weights just created at v across the edge zz'.

Step 2 screens the newly active edges against old weights, step 3 screens
all active edges against new weights; together with induction over moves
this keeps S_v equal to the true legal set, never an approximation.
"""

from __future__ import annotations

from .graph import Graph


class CandidateState:
    """Mutable assignment state with exact per-vertex candidate masks."""

    __slots__ = ("g", "l", "cand", "assignment", "used_labels", "used_weights")

    def __init__(self, g: Graph, l: int):
        if l < 1:
            raise ValueError(f"label pool size must be positive, got {l}")
        self.g = g
        self.l = l
        full = ((1 << l) - 1) << 1  # bits 1..l
        self.cand: list[int] = [0] + [full] * g.n
        self.assignment: dict[int, int] = {}
        self.used_labels = 0
        self.used_weights = 0

    def copy(self) -> "CandidateState":
        dup = object.__new__(CandidateState)
        dup.g = self.g
        dup.l = self.l
        dup.cand = list(self.cand)
        dup.assignment = dict(self.assignment)
        dup.used_labels = self.used_labels
        dup.used_weights = self.used_weights
        return dup

    def is_free(self, v: int) -> bool:
        return v not in self.assignment

    def free_vertices(self) -> list[int]:
        return [v for v in self.g.vertices() if v not in self.assignment]

    def is_total(self) -> bool:
        return len(self.assignment) == self.g.n

    def legal_mask(self, v: int) -> int:
        """Bitmask of labels legal on v right now (0 for assigned vertices)."""
        return self.cand[v]

    def has_any_move(self) -> bool:
        asg = self.assignment
        for v in self.g.vertices():
            if v not in asg and self.cand[v]:
                return True
        return False

    def is_legal(self, v: int, a: int) -> bool:
        return bool(self.cand[v] & (1 << a)) and v not in self.assignment

    # ---- mutation ----

    def assign(self, v: int, a: int) -> tuple:
        """Place label a on free vertex v; a must be in v's candidate mask.

        Returns an opaque undo record for `undo`.  Raises ValueError when the
        placement is not legal (callers that need a diagnosis should check
        legality themselves first).
        """
        if v in self.assignment:
            raise ValueError(f"vertex {v} is already labeled")
        abit = 1 << a
        if not (self.cand[v] & abit):
            raise ValueError(f"label {a} is not legal on vertex {v}")

        g = self.g
        asg = self.assignment
        cand = self.cand
        old_weights = self.used_weights

        new_weights: list[int] = []
        for u in g.neighbors(v):
            fu = asg.get(u)
            if fu is not None:
                new_weights.append(a + fu)

        asg[v] = a
        self.used_labels |= abit
        for w in new_weights:
            self.used_weights |= 1 << w

        removed: list[tuple[int, int]] = []
        saved_v_mask = cand[v]
        cand[v] = 0

        # step 1: the label is gone for everyone
        for u in g.vertices():
            if u not in asg and cand[u] & abit:
                cand[u] ^= abit
                removed.append((u, abit))

        # step 2: free neighbors of v vs. weights that predate this move
        if old_weights:
            for y in g.neighbors(v):
                if y in asg:
                    continue
                kill = 0
                m = old_weights
                while m:
                    bit = m & -m
                    m ^= bit
                    b = (bit.bit_length() - 1) - a
                    if 1 <= b <= self.l:
                        kill |= 1 << b
                kill &= cand[y]
                if kill:
                    cand[y] ^= kill
                    removed.append((y, kill))

        # step 3: every active free-labeled pair vs. the new weights
        if new_weights:
            for z in g.vertices():
                if z in asg:
                    continue
                kill = 0
                for zp in g.neighbors(z):
                    fzp = asg.get(zp)
                    if fzp is None:
                        continue
                    for w in new_weights:
                        b = w - fzp
                        if 1 <= b <= self.l:
                            kill |= 1 << b
                kill &= cand[z]
                if kill:
                    cand[z] ^= kill
                    removed.append((z, kill))

        return (v, a, saved_v_mask, new_weights, removed)

    def undo(self, rec: tuple) -> None:
        v, a, saved_v_mask, new_weights, removed = rec
        for u, mask in reversed(removed):
            self.cand[u] |= mask
        self.cand[v] = saved_v_mask
        del self.assignment[v]
        self.used_labels &= ~(1 << a)
        for w in new_weights:
            self.used_weights &= ~(1 << w)

    def child(self, v: int, a: int) -> "CandidateState":
        dup = self.copy()
        dup.assign(v, a)
        return dup


def iter_labels(mask: int):
    """Yield the labels present in a candidate bitmask, ascending."""
    while mask:
        bit = mask & -mask
        yield bit.bit_length() - 1
        mask ^= bit
