"""Backtracking search for open integer equal-length representations.

Every vertex gets d open intervals (l, l+x) with integer l in
[0, coord_max - x].  The search is complete over that grid: vertices are
assigned in descending-degree order, each vertex's own intervals in
left-to-right order, and a branch dies as soon as a non-edge overlaps, an
edge can no longer be realized, or a depth cap is exceeded.  Solutions
are canonicalized by demanding that the smallest left endpoint is 0
(any solution shifts there, so completeness is kept).

Also here: the stretch transform taking an (x,...,x) family to an
(x+1,...,x+1) family with the same intersection graph, and a
depth-capped unit search delegating to the token-order engine.
"""

from __future__ import annotations

import time
from typing import Optional

from .errors import BudgetExhausted, InputError, check_capacity
from .graphs import Graph
from .intervals import (DIntervalFamily, Interval, OPEN, VariableCountFamily,
                        classify, depth)
from .order_search import recognize_unit_d, uniform_profile

GRID_CELL_CAP = 6000


class SearchConfig:
    """Knobs for find_integer_rep: d intervals per vertex, length x,
    endpoints within [0, coord_max]."""

    __slots__ = ("d", "x", "coord_max", "depth_cap", "budget_ms")

    def __init__(self, d: int, x: int, coord_max: int,
                 depth_cap: Optional[int] = None,
                 budget_ms: Optional[int] = None):
        if d < 1 or x < 1 or coord_max < 1:
            raise InputError("d, x and coord_max must be positive")
        if coord_max < x:
            raise InputError(f"coord_max={coord_max} cannot hold length x={x}")
        if depth_cap is not None and depth_cap < 1:
            raise InputError("depth_cap must be positive when set")
        self.d = d
        self.x = x
        self.coord_max = coord_max
        self.depth_cap = depth_cap
        self.budget_ms = budget_ms

    def to_json_dict(self) -> dict:
        return {"d": self.d, "x": self.x, "coord_max": self.coord_max,
                "depth_cap": self.depth_cap, "budget_ms": self.budget_ms}


def config_from_json_dict(obj: dict) -> SearchConfig:
    return SearchConfig(int(obj["d"]), int(obj["x"]), int(obj["coord_max"]),
                        obj.get("depth_cap"), obj.get("budget_ms"))


def _independence_number(g: Graph) -> int:
    """Exact maximum independent set size, branch and bound on bitmasks."""
    n = g.n
    masks = [0] * n
    idx = {v: i for i, v in enumerate(g.vertices)}
    for u, v in g.edges():
        masks[idx[u]] |= 1 << idx[v]
        masks[idx[v]] |= 1 << idx[u]
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if cand == 0:
            best = max(best, size)
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & ~(1 << v) & ~masks[v], size + 1)
        grow(cand & ~(1 << v), size)

    grow((1 << n) - 1, 0)
    return best


def find_integer_rep(g: Graph, cfg: SearchConfig,
                     stats: Optional[dict] = None
                     ) -> Optional[DIntervalFamily]:
    """First open integer (x,...,x) d-representation of g on the grid,
    or None after exhausting it.  `stats`, if given, receives node and
    prune counters plus wall time."""
    n = g.n
    check_capacity(cfg.d * n * cfg.coord_max, GRID_CELL_CAP, "search grid")
    counters = {"nodes": 0, "prune_nonedge": 0, "prune_edge_dead": 0,
                "prune_depth": 0, "prune_packing": 0, "solutions": 0}
    t_start = time.monotonic()
    if stats is not None:
        stats.clear()
        stats.update(counters, wall_ms=0)

    def finish(result):
        if stats is not None:
            stats.update(counters)
            stats["wall_ms"] = int((time.monotonic() - t_start) * 1000)
        return result

    if n == 0:
        counters["solutions"] = 1
        return finish(DIntervalFamily(cfg.d, OPEN, {}))

    # An independent set of size a forces d*a pairwise-disjoint open
    # length-x intervals, which need a span of at least d*a*x.  When the
    # grid is shorter than that, no assignment exists; settle it up front
    # instead of exhausting the tree.
    if n <= 24:
        alpha = _independence_number(g)
        if cfg.coord_max < cfg.d * cfg.x * alpha:
            counters["prune_packing"] = 1
            return finish(None)

    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    index = {v: i for i, v in enumerate(order)}
    adj = [[index[u] for u in g.neighbors(v)] for v in order]
    is_edge = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in adj[i]:
            is_edge[i][j] = True

    d, x = cfg.d, cfg.x
    max_left = cfg.coord_max - x
    lefts: list[list[int]] = [[] for _ in range(n)]
    cells = [0] * cfg.coord_max
    deadline = (None if cfg.budget_ms is None
                else t_start + cfg.budget_ms / 1000)

    def meets(i: int, j: int) -> bool:
        for a in lefts[i]:
            for b in lefts[j]:
                if abs(a - b) < x:
                    return True
        return False

    def value_ok(vi: int, left: int) -> bool:
        for u in range(vi):
            if not is_edge[vi][u]:
                for a in lefts[u]:
                    if abs(a - left) < x:
                        counters["prune_nonedge"] += 1
                        return False
        return True

    def edges_alive(vi: int, slot: int, left: int) -> bool:
        # every earlier neighbor must intersect now or still be reachable
        # by one of the remaining slots, which sit in [left+x, max_left]
        rem = d - slot - 1
        lo, hi = left + x, max_left
        for u in range(vi):
            if not is_edge[vi][u] or meets(vi, u):
                continue
            if rem == 0 or lo > hi:
                counters["prune_edge_dead"] += 1
                return False
            if not any(lo - x < a < hi + x for a in lefts[u]):
                counters["prune_edge_dead"] += 1
                return False
        return True

    def assign_cells(left: int, delta: int) -> bool:
        for c in range(left, left + x):
            cells[c] += delta
            if cfg.depth_cap is not None and cells[c] > cfg.depth_cap:
                # roll back the cells touched so far, including this one
                for cc in range(left, c + 1):
                    cells[cc] -= delta
                counters["prune_depth"] += 1
                return False
        return True

    def extract() -> DIntervalFamily:
        return DIntervalFamily(
            d, OPEN,
            {order[i]: [Interval(a, a + x) for a in lefts[i]]
             for i in range(n)})

    def search(vi: int, slot: int) -> Optional[DIntervalFamily]:
        if vi == n:
            if min(min(l) for l in lefts) != 0:
                return None
            counters["solutions"] = 1
            return extract()
        counters["nodes"] += 1
        if deadline is not None and counters["nodes"] % 1024 == 0 \
                and time.monotonic() > deadline:
            raise BudgetExhausted(
                f"integer search budget exhausted after "
                f"{counters['nodes']} nodes")
        start = lefts[vi][-1] + x if slot else 0
        for left in range(start, max_left + 1):
            if not value_ok(vi, left):
                continue
            if not assign_cells(left, 1):
                continue
            lefts[vi].append(left)
            if edges_alive(vi, slot, left):
                nxt = (vi, slot + 1) if slot + 1 < d else (vi + 1, 0)
                found = search(*nxt)
                if found is not None:
                    return found
            lefts[vi].pop()
            assign_cells(left, -1)
        return None

    try:
        return finish(search(0, 0))
    except BudgetExhausted:
        finish(None)
        raise


def stretch(fam: DIntervalFamily) -> DIntervalFamily:
    """Lengthen every interval of an open integer (x,...,x) family by
    one unit without changing any intersection.

    The intervals, read left to right, split into groups that pairwise
    overlap (each group shares the unit cell ending at leftmost-left + x).
    Members of group q shift right by q - 1, then grow by one; two
    intervals in groups q < p overlapped before exactly when p = q + 1
    and their lefts differed by less than x, and both that relation and
    every disjointness survive the shift.
    """
    rep = classify(fam)
    if fam.openness != OPEN or rep.integer_x is None:
        raise InputError(
            "stretch needs an open family of equal integer lengths with "
            "integer endpoints")
    x = rep.integer_x
    items = sorted(fam.all_intervals(), key=lambda t: (t[2].left, t[0], t[1]))
    group_of: dict[tuple[str, int], int] = {}
    q = 0
    boundary = None
    for v, k, iv in items:
        if boundary is None or iv.left >= boundary:
            q += 1
            boundary = iv.left + x
        group_of[(v, k)] = q

    assignment = {
        v: [Interval(iv.left + group_of[(v, k)] - 1,
                     iv.left + group_of[(v, k)] + x)
            for k, iv in enumerate(fam.intervals_of(v))]
        for v in fam.vertices}
    if isinstance(fam, VariableCountFamily):
        return VariableCountFamily(OPEN, assignment)
    return DIntervalFamily(fam.d, OPEN, assignment)


def find_depth_bounded_unit(g: Graph, d: int, r: int, *,
                            budget_ms: Optional[int] = None
                            ) -> Optional[DIntervalFamily]:
    """A unit d-representation of g of depth at most r, or None if the
    complete depth-capped token search rules one out."""
    if r < 1:
        raise InputError(f"depth bound must be positive, got {r}")
    fam = recognize_unit_d(g, uniform_profile(g, d), depth_cap=r,
                           budget_ms=budget_ms)
    if fam is not None and depth(fam) > r:
        raise AssertionError(
            f"depth-capped search returned depth {depth(fam)} > {r}")
    return fam
