"""Split certificates for colored unit 2-interval recognition.

A split of a colored graph replaces every white vertex by two
"representative" vertices and every black vertex by one, then picks for
each original edge a nonempty set of representative pairs to carry it.
The colored graph has a unit 2-interval representation honoring the
colors (two intervals per white vertex, one per black) exactly when
some split's representative graph is a plain unit interval graph; the
conversion in both directions is constructive and implemented here.

Enumeration walks the edges in a fixed slot order and assigns each a
nonempty candidate subset, quotienting by the swap of the two
representatives of each white vertex.  The quotient is enforced
incrementally: a partial assignment survives only while no swap
combination maps its slot-mask sequence to a lexicographically smaller
one, so exactly one member of each orbit reaches a leaf.

When only unit-interval splits are wanted, branches are additionally
pruned on persistent claws: a representative with three neighbors that
are pairwise beyond reach of every undecided candidate pair can never
be fixed, whatever the remaining slots choose.  The prune is unsound
for plain split enumeration (it skips valid splits whose graph merely
is not unit interval) and is therefore off by default.
"""

from __future__ import annotations

import time
from typing import Callable, Optional

from .errors import BudgetExhausted, InputError, check_capacity
from .graphs import BLACK, WHITE, ColoredGraph, Graph, graph_from_json_dict, graph_to_json_dict
from .intervals import (
    CLOSED,
    DIntervalFamily,
    Interval,
    VariableCountFamily,
    validate_representation,
)
from .unit_interval import recognize_unit_interval, unit_order_masks

WHITE_VERTEX_CAP = 12
EDGE_CAP = 40


class Split:
    """A representative graph s together with the projection f onto the
    colored graph's vertices."""

    __slots__ = ("s", "f")

    def __init__(self, s: Graph, f: dict[str, str]):
        self.s = s
        self.f = dict(f)

    def preimage(self, v: str) -> tuple[str, ...]:
        return tuple(r for r in self.s.vertices if self.f.get(r) == v)

    def to_json_dict(self) -> dict:
        return {"s": graph_to_json_dict(self.s), "f": dict(self.f)}

    def __repr__(self):
        return f"Split(|s|={self.s.n}, edges={self.s.edge_count()})"


def split_from_json_dict(obj: dict) -> Split:
    if "s" not in obj or "f" not in obj:
        raise InputError("split JSON needs 's' and 'f' keys")
    s = graph_from_json_dict(obj["s"])
    if isinstance(s, ColoredGraph):
        s = s.graph
    return Split(s, {str(k): str(v) for k, v in obj["f"].items()})


class SplitReport:
    """Outcome of is_valid_split: empty violation list means valid."""

    __slots__ = ("violations",)

    def __init__(self, violations: list[str]):
        self.violations = list(violations)

    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {"valid": self.ok(), "violations": list(self.violations)}


def is_valid_split(cg: ColoredGraph, sp: Split) -> SplitReport:
    """Check the five split conditions; totality and onto-ness of f are
    prerequisites and raise InputError instead of being reported."""
    g = cg.graph
    for r in sp.s.vertices:
        if r not in sp.f:
            raise InputError(f"f is not total: {r!r} unmapped")
        if not g.has_vertex(sp.f[r]):
            raise InputError(f"f maps {r!r} to unknown vertex {sp.f[r]!r}")
    pre: dict[str, list[str]] = {v: [] for v in g.vertices}
    for r in sp.s.vertices:
        pre[sp.f[r]].append(r)
    for v in g.vertices:
        if not pre[v]:
            raise InputError(f"f is not onto: {v!r} has no representative")

    viols: list[str] = []
    for v in g.vertices:
        want = 2 if cg.gamma[v] == WHITE else 1
        if len(pre[v]) != want:
            viols.append(
                f"{'white' if want == 2 else 'black'}-size: {v!r} has "
                f"{len(pre[v])} representatives, needs {want}")
    for a, b in sp.s.edges():
        if sp.f[a] == sp.f[b]:
            viols.append(f"independence: edge ({a!r},{b!r}) joins "
                         f"representatives of {sp.f[a]!r}")
        elif not g.has_edge(sp.f[a], sp.f[b]):
            viols.append(f"projection: edge ({a!r},{b!r}) projects to the "
                         f"non-edge ({sp.f[a]!r},{sp.f[b]!r})")
    for u, v in g.edges():
        if not any(sp.s.has_edge(a, b)
                   for a in pre[u] for b in pre[v]
                   if sp.s.has_vertex(a) and sp.s.has_vertex(b)):
            viols.append(f"coverage: edge ({u!r},{v!r}) has no "
                         "representative edge")
    return SplitReport(viols)


# -- enumeration --------------------------------------------------------

class _Slot:
    __slots__ = ("u", "v", "cands", "tables")

    def __init__(self, u, v, cands, tables):
        self.u = u          # cg vertex labels
        self.v = v
        self.cands = cands  # list of (rep_index_a, rep_index_b)
        self.tables = tables  # {(swap_u, swap_v): mask permutation table}


def _perm_table(perm: list[int]) -> list[int]:
    out = [0] * (1 << len(perm))
    for m in range(len(out)):
        t = 0
        for i in range(len(perm)):
            if m >> i & 1:
                t |= 1 << perm[i]
        out[m] = t
    return out


_WB_SWAP = _perm_table([1, 0])
_WW_SWAP_U = _perm_table([2, 3, 0, 1])
_WW_SWAP_V = _perm_table([1, 0, 3, 2])
_WW_SWAP_UV = _perm_table([3, 2, 1, 0])


class _SplitSearch:
    def __init__(self, cg: ColoredGraph, *, unit_only: bool,
                 visitor: Callable[[Split], object],
                 limit: Optional[int], deadline: Optional[float]):
        self.cg = cg
        self.unit_only = unit_only
        self.visitor = visitor
        self.limit = limit
        self.deadline = deadline
        g = cg.graph

        self.reps: list[str] = []
        self.rep_of: dict[str, list[int]] = {}
        self.f: dict[str, str] = {}
        for v in g.vertices:
            if cg.gamma[v] == WHITE:
                names = [f"{v}#1", f"{v}#2"]
            else:
                names = [v]
            idxs = []
            for name in names:
                if name in self.f or g.has_vertex(name) and name != v:
                    raise InputError(f"representative name {name!r} collides")
                idxs.append(len(self.reps))
                self.reps.append(name)
                self.f[name] = v
            self.rep_of[v] = idxs

        whites = [v for v in g.vertices if cg.gamma[v] == WHITE]
        self.white_pos = {v: i for i, v in enumerate(whites)}
        self.slots = [self._make_slot(u, v) for u, v in self._slot_order()]

        R = len(self.reps)
        self.adj = [0] * R
        self.poss = [0] * R
        for slot in self.slots:
            for a, b in slot.cands:
                self.poss[a] |= 1 << b
                self.poss[b] |= 1 << a
        self.chosen: list[int] = []
        self.visits = 0
        self.nodes = 0

    def _slot_order(self) -> list[tuple[str, str]]:
        # decide edges with fewer white endpoints first: their candidates
        # freeze sooner and sit on the high-degree hubs of gadget graphs,
        # so claw pruning bites early
        def key(e):
            u, v = e
            whites = (self.cg.gamma[u] == WHITE) + (self.cg.gamma[v] == WHITE)
            return (whites, u, v)
        return sorted(self.cg.graph.edges(), key=key)

    def _make_slot(self, u: str, v: str) -> _Slot:
        ru, rv = self.rep_of[u], self.rep_of[v]
        cands = [(a, b) for a in ru for b in rv]
        uw, vw = len(ru) == 2, len(rv) == 2
        tables: dict[tuple[bool, bool], list[int]] = {}
        if uw and vw:
            tables[(True, False)] = _WW_SWAP_U
            tables[(False, True)] = _WW_SWAP_V
            tables[(True, True)] = _WW_SWAP_UV
        elif uw:
            tables[(True, False)] = _WB_SWAP
        elif vw:
            tables[(False, True)] = _WB_SWAP
        return _Slot(u, v, cands, tables)

    def _transform(self, slot: _Slot, element: int, mask: int) -> int:
        su = slot.u in self.white_pos and element >> self.white_pos[slot.u] & 1
        sv = slot.v in self.white_pos and element >> self.white_pos[slot.v] & 1
        table = slot.tables.get((bool(su), bool(sv)))
        return mask if table is None else table[mask]

    def run(self) -> None:
        nw = len(self.white_pos)
        active = list(range(1, 1 << nw))
        self._dfs(0, active)

    def _dfs(self, t: int, active: list[int]) -> bool:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 \
                and time.monotonic() > self.deadline:
            raise BudgetExhausted("split enumeration ran out of time")
        if t == len(self.slots):
            return self._leaf()
        slot = self.slots[t]
        full = (1 << len(slot.cands)) - 1
        for m in range(1, full + 1):
            surviving = []
            minimal = True
            for el in active:
                m2 = self._transform(slot, el, m)
                if m2 < m:
                    minimal = False
                    break
                if m2 == m:
                    surviving.append(el)
            if not minimal:
                continue
            undo = self._apply(slot, m)
            if not self.unit_only \
                    or not (self._claw_somewhere() or self._frozen_c4()):
                if self._dfs(t + 1, surviving):
                    self._unapply(slot, m, undo)
                    return True
            self._unapply(slot, m, undo)
        return False

    def _apply(self, slot: _Slot, m: int):
        undo_poss: list[tuple[int, int, int]] = []
        for i, (a, b) in enumerate(slot.cands):
            if m >> i & 1:
                self.adj[a] |= 1 << b
                self.adj[b] |= 1 << a
            else:
                undo_poss.append((a, b, self.poss[a]))
                self.poss[a] &= ~(1 << b)
                self.poss[b] &= ~(1 << a)
        self.chosen.append(m)
        return undo_poss

    def _unapply(self, slot: _Slot, m: int, undo_poss) -> None:
        self.chosen.pop()
        for i, (a, b) in enumerate(slot.cands):
            if m >> i & 1:
                self.adj[a] &= ~(1 << b)
                self.adj[b] &= ~(1 << a)
        for a, b, _old in reversed(undo_poss):
            self.poss[a] |= 1 << b
            self.poss[b] |= 1 << a

    def _claw_somewhere(self) -> bool:
        """A center with 3 pairwise never-again-adjacent neighbors."""
        for c in range(len(self.reps)):
            nb = self.adj[c]
            if nb.bit_count() < 3:
                continue
            members = []
            mm = nb
            while mm:
                low = mm & -mm
                members.append(low.bit_length() - 1)
                mm ^= low
            k = len(members)
            for i in range(k):
                a = members[i]
                for j in range(i + 1, k):
                    b = members[j]
                    if self.poss[a] >> b & 1:
                        continue
                    for l in range(j + 1, k):
                        d = members[l]
                        if not (self.poss[a] >> d & 1) \
                                and not (self.poss[b] >> d & 1):
                            return True
        return False

    def _frozen_c4(self) -> bool:
        """An induced 4-cycle among decided edges whose chords can never
        appear: no completion of this branch is unit interval."""
        R = len(self.reps)
        for b in range(R):
            ab = self.adj[b]
            if not ab:
                continue
            for d in range(b + 1, R):
                if self.poss[b] >> d & 1 or not self.adj[d]:
                    continue
                common = ab & self.adj[d]
                if common.bit_count() < 2:
                    continue
                mm = common
                while mm:
                    low = mm & -mm
                    a = low.bit_length() - 1
                    mm ^= low
                    if common & ~self.poss[a] & ~low:
                        return True
        return False

    def _leaf(self) -> bool:
        s = Graph()
        for r in self.reps:
            s.add_vertex(r)
        for t, slot in enumerate(self.slots):
            m = self.chosen[t]
            for i, (a, b) in enumerate(slot.cands):
                if m >> i & 1:
                    s.add_edge(self.reps[a], self.reps[b])
        if self.unit_only and unit_order_masks(s.n, s.adjacency_masks()) is None:
            return False
        sp = Split(s, self.f)
        self.visits += 1
        keep_going = self.visitor(sp) is not False
        if self.limit is not None and self.visits >= self.limit:
            return True
        return not keep_going


def _deadline(budget_ms: Optional[int]) -> Optional[float]:
    if budget_ms is None:
        return None
    return time.monotonic() + budget_ms / 1000.0


def enumerate_splits(cg: ColoredGraph, visitor: Callable[[Split], object], *,
                     unit_only: bool = False,
                     limit: Optional[int] = None,
                     budget_ms: Optional[int] = None) -> int:
    """Visit every split of cg once up to representative swaps.

    With unit_only=True only splits whose representative graph is a unit
    interval graph are visited (the rest are pruned wholesale).  The
    visitor may return False to stop.  Returns the number of visits.
    """
    nw = sum(1 for v in cg.graph.vertices if cg.gamma[v] == WHITE)
    check_capacity(nw, WHITE_VERTEX_CAP, "white vertex count")
    check_capacity(cg.graph.edge_count(), EDGE_CAP, "edge count")
    search = _SplitSearch(cg, unit_only=unit_only, visitor=visitor,
                          limit=limit, deadline=_deadline(budget_ms))
    search.run()
    return search.visits


def split_to_representation(cg: ColoredGraph, sp: Split,
                            srep: DIntervalFamily, *,
                            uniform_d: bool = False) -> DIntervalFamily:
    """Turn a unit representation of the split graph into a colored unit
    2-interval family: whites inherit both representatives' intervals,
    blacks their single one.

    With uniform_d=True every black vertex also gets a far-away second
    interval so the result is a plain d=2 family.
    """
    counts = {r: 1 for r in sp.s.vertices}
    rep = validate_representation(sp.s, srep, {"unit": True, "counts": counts})
    if not rep.ok():
        raise InputError(
            "srep is not a unit representation of the split graph: "
            + "; ".join(rep.to_json_dict()["violations"]))
    assignment: dict[str, list[Interval]] = {v: [] for v in cg.graph.vertices}
    for r in sp.s.vertices:
        assignment[sp.f[r]].append(srep.intervals_of(r)[0])
    for v, ivs in assignment.items():
        want = 2 if cg.gamma[v] == WHITE else 1
        if len(ivs) != want:
            raise InputError(f"split gives {v!r} {len(ivs)} intervals, "
                             f"colors require {want}")
        ivs.sort(key=lambda iv: (iv.left, iv.right))
    if uniform_d:
        rights = [iv.right for ivs in assignment.values() for iv in ivs]
        pad_left = (max(rights) if rights else 0) + 2
        for v in cg.graph.vertices:
            if cg.gamma[v] == BLACK:
                assignment[v].append(Interval(pad_left, pad_left + 1))
                pad_left += 3
        fam: DIntervalFamily = DIntervalFamily(2, CLOSED, assignment)
    else:
        fam = VariableCountFamily(CLOSED, assignment)
    check = validate_representation(cg.graph, fam, {"unit": True},
                                    colored=None if uniform_d else cg)
    if not check.ok():
        raise AssertionError(
            "split conversion produced an invalid family: "
            + "; ".join(check.to_json_dict()["violations"]))
    return fam


def recognize_colored_unit2_via_splits(
        cg: ColoredGraph, *,
        budget_ms: Optional[int] = None
        ) -> Optional[tuple[Split, DIntervalFamily]]:
    """A split with unit-interval graph plus the colored family built
    from it, or None when no split works."""
    hit: list[Split] = []

    def first(sp: Split):
        hit.append(sp)
        return False

    enumerate_splits(cg, first, unit_only=True, budget_ms=budget_ms)
    if not hit:
        return None
    sp = hit[0]
    outcome = recognize_unit_interval(sp.s)
    if not isinstance(outcome, tuple):
        raise AssertionError("leaf filter admitted a non-unit split graph")
    _ordering, srep = outcome
    return sp, split_to_representation(cg, sp, srep)
