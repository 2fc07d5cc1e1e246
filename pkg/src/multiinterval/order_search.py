"""Unit d-interval recognition by exhaustive search over token orders.

A realization of a graph by closed unit intervals (several per vertex)
is captured combinatorially by the left-to-right order of the intervals
("tokens") plus, for each token, the last later token it still reaches.
Reaches are nondecreasing along the order, so the open tokens at any
moment form a suffix of the placed ones and each placement decision is
just "how many of the currently open tokens survive, and which vertex's
token comes next".

The search over these decision sequences is exhaustive, with exact
pruning rules (details in the transition code):

* a new token may only be placed over surviving tokens of adjacent
  vertices, since simultaneously open tokens always intersect;
* once a vertex has no unplaced and no open tokens, its missing edges
  can never be realized;
* pairwise nonadjacent neighbors still missing their edge to v need
  pairwise disjoint tokens touching v's remaining tokens, and a unit
  interval meets at most 2 pairwise disjoint ones (1 for an already
  open token), giving a sharp capacity bound.

Enumeration visits each realization once up to three symmetries that
all preserve realizability and every per-realization property checked
anywhere in this package: renaming the interchangeable copies of a
vertex, permuting the disconnected runs of the layout, and mirroring
the whole line.  Recognition mode simply returns the first realization.

This oracle is deliberately independent of the split-certificate engine
in :mod:`multiinterval.splits`; the test suite plays them against each
other on every small colored graph.
"""

from __future__ import annotations

import time
from typing import Callable, Optional

from .errors import BudgetExhausted, InputError, check_capacity
from .graphs import BLACK, WHITE, ColoredGraph, Graph
from .intervals import (
    CLOSED,
    DIntervalFamily,
    Interval,
    VariableCountFamily,
)
from fractions import Fraction

TOKEN_CAP = 36

_EQ = 0
_GT = 1


class TokenOrder:
    """An interval layout as (vertex, copy) tokens plus reach positions.

    reach[i] is the position of the last token that token i intersects;
    reach[i] >= i and reach is nondecreasing.  Tokens of one vertex are
    numbered by copy index in order of appearance.
    """

    __slots__ = ("tokens", "reach")

    def __init__(self, tokens, reach):
        self.tokens = tuple((v, c) for v, c in tokens)
        self.reach = tuple(reach)
        n = len(self.tokens)
        if len(self.reach) != n:
            raise InputError("token and reach lengths differ")
        prev = 0
        for i, r in enumerate(self.reach):
            if r < i or r >= n:
                raise InputError(f"reach[{i}]={r} out of range")
            if r < prev:
                raise InputError("reach must be nondecreasing")
            prev = r
        for i in range(n):
            for j in range(i + 1, n):
                if self.tokens[i][0] == self.tokens[j][0] and j <= self.reach[i]:
                    raise InputError(
                        f"tokens {i} and {j} of vertex {self.tokens[i][0]!r} "
                        "intersect")

    def intersecting_pairs(self) -> list[tuple[int, int]]:
        out = []
        for i in range(len(self.tokens)):
            for j in range(i + 1, self.reach[i] + 1):
                out.append((i, j))
        return out

    def depth(self) -> int:
        best = 0
        for j in range(len(self.tokens)):
            active = sum(1 for i in range(j + 1) if self.reach[i] >= j)
            best = max(best, active)
        return best

    def __repr__(self):
        return f"TokenOrder({list(self.tokens)}, reach={list(self.reach)})"


def uniform_profile(g: Graph, d: int) -> dict[str, int]:
    if d < 1:
        raise InputError(f"profile copies must be positive, got {d}")
    return {v: d for v in g.vertices}


def colored_profile(cg: ColoredGraph) -> dict[str, int]:
    """White vertices get 2 interval copies, black vertices 1."""
    return {v: 2 if cg.gamma[v] == WHITE else 1 for v in cg.graph.vertices}


def order_to_family(t: TokenOrder) -> DIntervalFamily:
    """Closed unit intervals realizing exactly t's token intersections.

    Left endpoints increase strictly; all adjacency and gap constraints
    are kept strict by midpoint choices, so the family is robust to the
    closed-endpoint intersection rule.
    """
    n = len(t.tokens)
    lefts: list[Fraction] = []
    for j in range(n):
        if j == 0:
            lefts.append(Fraction(0))
            continue
        # tokens reaching j form a suffix i0..j-1 of the earlier tokens
        i0 = j
        for i in range(j - 1, -1, -1):
            if t.reach[i] >= j:
                i0 = i
            else:
                break
        lower = lefts[j - 1]
        if i0 > 0:
            lower = max(lower, lefts[i0 - 1] + 1)
        if i0 == j:
            lefts.append(lower + 2)
        else:
            upper = lefts[i0] + 1
            lefts.append((lower + upper) / 2)
    assignment: dict[str, list[Interval]] = {}
    for j, (v, _copy) in enumerate(t.tokens):
        assignment.setdefault(v, []).append(Interval(lefts[j], lefts[j] + 1))
    counts = {len(ivs) for ivs in assignment.values()}
    if len(counts) == 1:
        return DIntervalFamily(counts.pop(), CLOSED, assignment)
    return VariableCountFamily(CLOSED, assignment)


class _Engine:
    """Shared DFS over placement decisions; see the module docstring."""

    def __init__(self, g: Graph, profile: dict[str, int], *,
                 depth_cap: Optional[int], deadline: Optional[float],
                 enumerate_mode: bool,
                 visitor: Optional[Callable[[TokenOrder], object]],
                 limit: Optional[int]):
        labels = g.vertices
        if set(profile) != set(labels):
            raise InputError("profile must assign a copy count to every vertex")
        self.labels = labels
        self.n = g.n
        self.adj = g.adjacency_masks()
        self.counts = [profile[v] for v in labels]
        for v, c in zip(labels, self.counts):
            if c < 1:
                raise InputError(f"profile of {v!r} must be >= 1, got {c}")
        self.total = sum(self.counts)
        self.depth_cap = depth_cap
        self.deadline = deadline
        self.enumerate_mode = enumerate_mode
        self.visitor = visitor
        self.limit = limit

        self.unplaced = list(self.counts)
        self.open_list: list[int] = []       # vertex index per open token
        self.open_token: list[int] = []      # global position per open token
        self.open_count = [0] * self.n
        self.realized = [0] * self.n
        self.seq: list[tuple[int, int]] = []  # (vertex, survivors) decisions
        self.runs: list[list[tuple[int, int]]] = []
        self.cmp = _GT
        self.frames: list[tuple] = []
        self.found: Optional[TokenOrder] = None
        self.visits = 0
        self.nodes = 0

    # -- transitions --------------------------------------------------

    def _apply(self, k: int, v: int) -> bool:
        """Place a token of v over the last k open tokens; False = pruned."""
        e = (v, k)
        boundary = k == 0 and bool(self.seq)
        old_cmp = self.cmp
        if boundary:
            if self.cmp == _EQ and len(self.runs) >= 2 \
                    and len(self.runs[-1]) < len(self.runs[-2]):
                return False  # completed run sorts before its predecessor
            prev = self.runs[-1]
            if e < prev[0]:
                return False
            self.cmp = _EQ if e == prev[0] else _GT
            self.runs.append([e])
        elif not self.seq:
            self.runs.append([e])
            self.cmp = _GT
        else:
            if self.cmp == _EQ:
                prev = self.runs[-2] if len(self.runs) >= 2 else None
                pos = len(self.runs[-1])
                if prev is None or pos >= len(prev):
                    self.cmp = _GT
                else:
                    if e < prev[pos]:
                        return False
                    if e > prev[pos]:
                        self.cmp = _GT
            self.runs[-1].append(e)

        L = len(self.open_list)
        ncl = L - k
        closed_v = self.open_list[:ncl]
        closed_t = self.open_token[:ncl]
        del self.open_list[:ncl]
        del self.open_token[:ncl]

        rz_undo: list[tuple[int, int]] = []
        bit_v = 1 << v
        surv_mask = 0
        for u in self.open_list:
            surv_mask |= 1 << u
        if surv_mask:
            rz_undo.append((v, self.realized[v]))
            self.realized[v] |= surv_mask
            for u in self.open_list:
                rz_undo.append((u, self.realized[u]))
                self.realized[u] |= bit_v

        self.open_list.append(v)
        self.open_token.append(len(self.seq))
        self.seq.append(e)
        self.unplaced[v] -= 1
        self.open_count[v] += 1
        for u in closed_v:
            self.open_count[u] -= 1

        self.frames.append((closed_v, closed_t, rz_undo, old_cmp, boundary))

        for x in _affected(closed_v, v):
            unrl = self.adj[x] & ~self.realized[x]
            if unrl:
                cap = 2 * self.unplaced[x] + self.open_count[x]
                if cap == 0 or (unrl.bit_count() > cap
                                and _greedy_independent(unrl, self.adj) > cap):
                    self._undo()
                    return False
        return True

    def _undo(self) -> None:
        closed_v, closed_t, rz_undo, old_cmp, boundary = self.frames.pop()
        v, _k = self.seq.pop()
        self.unplaced[v] += 1
        self.open_count[v] -= 1
        for u in closed_v:
            self.open_count[u] += 1
        self.open_list.pop()
        self.open_token.pop()
        self.open_list[:0] = closed_v
        self.open_token[:0] = closed_t
        for x, old in rz_undo:
            self.realized[x] = old
        if boundary or len(self.runs[-1]) == 1:
            self.runs.pop()
        else:
            self.runs[-1].pop()
        self.cmp = old_cmp

    # -- leaves -------------------------------------------------------

    def _global_reach(self) -> list[int]:
        total = len(self.seq)
        reach = [0] * total
        open_pos: list[int] = []
        for j, (_v, k) in enumerate(self.seq):
            ncl = len(open_pos) - k
            for t in open_pos[:ncl]:
                reach[t] = j - 1
            del open_pos[:ncl]
            open_pos.append(j)
        for t in open_pos:
            reach[t] = total - 1
        return reach

    def _leaf(self) -> bool:
        if self.cmp == _EQ and len(self.runs) >= 2 \
                and len(self.runs[-1]) < len(self.runs[-2]):
            return False
        for v in range(self.n):
            if self.realized[v] != self.adj[v]:
                return False
        reach = self._global_reach()
        if self.enumerate_mode and not self._mirror_canonical(reach):
            return False
        copies = [0] * self.n
        tokens = []
        for v, _k in self.seq:
            tokens.append((self.labels[v], copies[v]))
            copies[v] += 1
        order = TokenOrder(tokens, reach)
        self.visits += 1
        if self.enumerate_mode:
            keep_going = True
            if self.visitor is not None:
                keep_going = self.visitor(order) is not False
            if self.limit is not None and self.visits >= self.limit:
                return True
            return not keep_going
        self.found = order
        return True

    def _mirror_canonical(self, reach: list[int]) -> bool:
        """Accept only the lexicographically smaller of layout and mirror."""
        encoding = [tuple(run) for run in self.runs]
        mirrored = []
        base = 0
        for run in self.runs:
            m = len(run)
            rev = tuple(
                (self.seq[base + m - 1 - j][0],
                 reach[base + m - 1 - j] - (base + m - 1 - j))
                for j in range(m))
            mirrored.append(rev)
            base += m
        mirrored.sort()
        return encoding <= mirrored

    # -- search -------------------------------------------------------

    def run(self) -> None:
        self._recurse()

    def _recurse(self) -> bool:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0 \
                and time.monotonic() > self.deadline:
            raise BudgetExhausted("token order search ran out of time")
        if len(self.seq) == self.total:
            return self._leaf()
        L = len(self.open_list)
        kmax = L
        if self.depth_cap is not None:
            kmax = min(kmax, self.depth_cap - 1)
        suffix = [0] * (L + 1)
        for k in range(1, L + 1):
            suffix[k] = suffix[k - 1] | 1 << self.open_list[L - k]
        for k in range(kmax, -1, -1):
            sm = suffix[k]
            for v in range(self.n):
                if self.unplaced[v] == 0:
                    continue
                if sm & ~self.adj[v]:
                    continue
                if self._apply(k, v):
                    stop = self._recurse()
                    self._undo()
                    if stop:
                        return True
        return False


def _affected(closed_v: list[int], v: int) -> list[int]:
    out = [v]
    for u in closed_v:
        if u != v and u not in out:
            out.append(u)
    return out


def _greedy_independent(mask: int, adj: list[int]) -> int:
    size = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        size += 1
        mask &= ~(adj[i] | low)
    return size


def _deadline(budget_ms: Optional[int]) -> Optional[float]:
    if budget_ms is None:
        return None
    return time.monotonic() + budget_ms / 1000.0


def recognize_unit_d(g: Graph, profile: dict[str, int], *,
                     depth_cap: Optional[int] = None,
                     budget_ms: Optional[int] = None,
                     token_cap: int = TOKEN_CAP
                     ) -> Optional[DIntervalFamily]:
    """A closed unit family realizing g with the given per-vertex interval
    counts, or None when no such family exists.

    Raises CapacityError over the token bound and BudgetExhausted when a
    time budget runs out before the search finishes.
    """
    total = sum(profile.get(v, 0) for v in g.vertices)
    check_capacity(total, token_cap, "token count")
    eng = _Engine(g, profile, depth_cap=depth_cap,
                  deadline=_deadline(budget_ms), enumerate_mode=False,
                  visitor=None, limit=None)
    eng.run()
    if eng.found is None:
        return None
    return order_to_family(eng.found)


def enumerate_realizations(g: Graph, profile: dict[str, int],
                           visitor: Callable[[TokenOrder], object], *,
                           limit: Optional[int] = None,
                           depth_cap: Optional[int] = None,
                           budget_ms: Optional[int] = None,
                           token_cap: int = TOKEN_CAP) -> int:
    """Visit every realization of g once up to the engine's symmetries.

    The visitor may return False to stop early.  Returns the number of
    realizations visited.
    """
    total = sum(profile.get(v, 0) for v in g.vertices)
    check_capacity(total, token_cap, "token count")
    eng = _Engine(g, profile, depth_cap=depth_cap,
                  deadline=_deadline(budget_ms), enumerate_mode=True,
                  visitor=visitor, limit=limit)
    eng.run()
    return eng.visits
