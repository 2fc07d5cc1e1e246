"""SAT machinery and the hardness construction.

The pipeline starts from CNF, normalizes to clauses of exactly 3
distinct variables, rewrites into a restricted form (3-clauses all
positive, every variable in one 3-clause and three clauses total, once
negated), and builds a colored graph whose colored unit 2-interval
representability matches satisfiability.  Two follow-up rewrites remove
the colors (degree grows to at most 7) and lift the interval count from
2 to any d >= 3.

A small exhaustive SAT oracle backs every transformation with
equisatisfiability checks in the tests; nothing here is trusted on
construction alone.
"""

from __future__ import annotations

import time
from typing import Optional

import numpy as np

from .errors import BudgetExhausted, InputError, check_capacity
from .graphs import BLACK, WHITE, ColoredGraph, Graph
from .order_search import TOKEN_CAP, colored_profile, recognize_unit_d
from . import splits as _splits

SAT_VAR_CAP = 24


class CnfFormula:
    """Clauses of signed 1-based variable indices; a variable appears at
    most once per clause (either sign)."""

    __slots__ = ("num_vars", "clauses")

    def __init__(self, num_vars: int, clauses):
        if num_vars < 0:
            raise InputError(f"negative variable count {num_vars}")
        self.num_vars = num_vars
        out = []
        for ci, cl in enumerate(clauses):
            cl = tuple(int(l) for l in cl)
            seen = set()
            for lit in cl:
                if lit == 0:
                    raise InputError(f"clause {ci}: literal 0")
                v = abs(lit)
                if v > num_vars:
                    raise InputError(
                        f"clause {ci}: variable {v} exceeds num_vars={num_vars}")
                if v in seen:
                    raise InputError(
                        f"clause {ci}: variable {v} appears twice")
                seen.add(v)
            out.append(cl)
        self.clauses = tuple(out)

    def __repr__(self):
        return f"CnfFormula(num_vars={self.num_vars}, clauses={len(self.clauses)})"

    def to_json_dict(self) -> dict:
        return {"num_vars": self.num_vars,
                "clauses": [list(c) for c in self.clauses]}


def cnf_from_json_dict(obj: dict) -> CnfFormula:
    return CnfFormula(int(obj["num_vars"]), obj["clauses"])


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS CNF.  Duplicate literals inside a clause collapse; a
    clause holding both x and -x is an error, as is any count mismatch
    with the header."""
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise InputError(f"line {ln}: second header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"line {ln}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputError(f"line {ln}: non-numeric header counts")
            if num_vars < 0 or num_clauses < 0:
                raise InputError(f"line {ln}: negative header counts")
            continue
        if num_vars is None:
            raise InputError(f"line {ln}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InputError(f"line {ln}: bad literal {tok!r}")
            if lit == 0:
                if not cur:
                    raise InputError(f"line {ln}: empty clause")
                dedup: list[int] = []
                for l in cur:
                    if -l in dedup:
                        raise InputError(
                            f"line {ln}: clause contains {abs(l)} and its "
                            "negation")
                    if l not in dedup:
                        dedup.append(l)
                clauses.append(tuple(dedup))
                cur = []
            else:
                if abs(lit) > num_vars:
                    raise InputError(
                        f"line {ln}: variable {abs(lit)} exceeds header count")
                cur.append(lit)
    if num_vars is None:
        raise InputError("missing 'p cnf' header")
    if cur:
        raise InputError("unterminated clause at end of input")
    if len(clauses) != num_clauses:
        raise InputError(
            f"header promises {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, clauses)


def brute_force_sat(f: CnfFormula) -> Optional[dict[int, bool]]:
    """Exhaustive satisfiability check, vectorized over assignment
    blocks.  Returns a model or None."""
    n = f.num_vars
    check_capacity(n, SAT_VAR_CAP, "variable count")
    if not f.clauses:
        return {v: False for v in range(1, n + 1)}
    total = 1 << n
    chunk = min(total, 1 << 20)
    for base in range(0, total, chunk):
        assigns = np.arange(base, min(base + chunk, total), dtype=np.uint64)
        alive = np.ones(assigns.shape, dtype=bool)
        for cl in f.clauses:
            sat = np.zeros(assigns.shape, dtype=bool)
            for lit in cl:
                bit = (assigns >> np.uint64(abs(lit) - 1)) & np.uint64(1)
                sat |= (bit == 1) if lit > 0 else (bit == 0)
            alive &= sat
            if not alive.any():
                break
        idx = np.flatnonzero(alive)
        if idx.size:
            model = int(assigns[idx[0]])
            return {v: bool(model >> (v - 1) & 1) for v in range(1, n + 1)}
    return None


# -- normalization to exactly-3 form ------------------------------------

def preprocess_to_exactly3(f: CnfFormula) -> CnfFormula:
    """Normalize so every clause has exactly 3 distinct variables.

    Steps, to a fixpoint: collapse duplicate literals and drop
    tautological clauses (vacuous for formulas built through CnfFormula,
    which forbids both), eliminate variables with a single occurrence by
    satisfying their clause, then widen narrow clauses by splitting on a
    fresh variable: C becomes (C or z) and (C or not z).  Clauses wider
    than 3 are not handled here and raise.
    """
    num_vars = f.num_vars
    clauses: list[tuple[int, ...]] = []
    for cl in f.clauses:
        dedup: list[int] = []
        tautology = False
        for l in cl:
            if -l in dedup:
                tautology = True
                break
            if l not in dedup:
                dedup.append(l)
        if not tautology:
            clauses.append(tuple(dedup))
    for cl in clauses:
        if len(cl) > 3:
            raise InputError(
                f"clause {cl} has {len(cl)} literals; only widths <= 3 "
                "are supported")

    while True:
        occ: dict[int, list[int]] = {}
        for ci, cl in enumerate(clauses):
            for l in cl:
                occ.setdefault(abs(l), []).append(ci)
        singles = {v for v, cs in occ.items() if len(cs) == 1}
        if not singles:
            break
        drop = {occ[v][0] for v in singles}
        clauses = [cl for ci, cl in enumerate(clauses) if ci not in drop]

    widened: list[tuple[int, ...]] = []
    stack = list(clauses)
    while stack:
        cl = stack.pop()
        if len(cl) == 3:
            widened.append(cl)
        else:
            num_vars += 1
            z = num_vars
            stack.append(cl + (z,))
            stack.append(cl + (-z,))
    widened.reverse()
    return CnfFormula(num_vars, widened)


class RestrictedForm:
    """An exactly-3 rewrite where 3-clauses are all-positive and every
    variable occurs in one 3-clause and three clauses total, twice
    positive and once negated.

    occurrence_table maps each variable to (3-clause index, tuple of
    positive 2-clause indices, negated clause index) into
    formula.clauses.
    """

    __slots__ = ("formula", "occurrence_table")

    def __init__(self, formula: CnfFormula,
                 occurrence_table: dict[int, tuple[int, tuple[int, ...], int]]):
        self.formula = formula
        self.occurrence_table = dict(occurrence_table)
        self._validate()

    def _validate(self) -> None:
        f = self.formula
        three = [ci for ci, cl in enumerate(f.clauses) if len(cl) == 3]
        for ci, cl in enumerate(f.clauses):
            if len(cl) not in (2, 3):
                raise InputError(f"clause {ci} has width {len(cl)}")
            if len(cl) == 3 and any(l < 0 for l in cl):
                raise InputError(f"3-clause {ci} is not all-positive")
        pos: dict[int, list[int]] = {v: [] for v in range(1, f.num_vars + 1)}
        neg: dict[int, list[int]] = {v: [] for v in range(1, f.num_vars + 1)}
        for ci, cl in enumerate(f.clauses):
            for l in cl:
                (pos if l > 0 else neg)[abs(l)].append(ci)
        for v in range(1, f.num_vars + 1):
            in3 = [ci for ci in pos[v] if len(f.clauses[ci]) == 3]
            if len(in3) != 1:
                raise InputError(
                    f"variable {v} occurs in {len(in3)} 3-clauses, wants 1")
            if len(pos[v]) != 2 or len(neg[v]) != 1:
                raise InputError(
                    f"variable {v} occurs {len(pos[v])}x positive / "
                    f"{len(neg[v])}x negated, wants 2/1")
            want = (in3[0],
                    tuple(ci for ci in pos[v] if len(f.clauses[ci]) == 2),
                    neg[v][0])
            if self.occurrence_table.get(v) != want:
                raise InputError(
                    f"occurrence table mismatch for variable {v}: "
                    f"{self.occurrence_table.get(v)} != {want}")

    def to_json_dict(self) -> dict:
        return {
            "formula": self.formula.to_json_dict(),
            "occurrence_table": {
                str(v): [t[0], list(t[1]), t[2]]
                for v, t in sorted(self.occurrence_table.items())},
        }


def as_restricted(f: CnfFormula) -> Optional[RestrictedForm]:
    """Interpret f as already being in restricted form, or None."""
    table: dict[int, tuple[int, tuple[int, ...], int]] = {}
    for v in range(1, f.num_vars + 1):
        three = [ci for ci, cl in enumerate(f.clauses)
                 if len(cl) == 3 and v in cl]
        pos2 = tuple(ci for ci, cl in enumerate(f.clauses)
                     if len(cl) == 2 and v in cl)
        negc = [ci for ci, cl in enumerate(f.clauses) if -v in cl]
        if len(three) != 1 or len(negc) != 1:
            return None
        table[v] = (three[0], pos2, negc[0])
    try:
        return RestrictedForm(f, table)
    except InputError:
        return None


def restrict_sat(f: CnfFormula) -> RestrictedForm:
    """Rewrite an exactly-3 formula into restricted form.

    Each occurrence of a variable gets its own copy; a negative
    occurrence uses a fresh variable placed positively in the clause and
    negated in the linking cycle.  The cyclic 2-clauses
    (l_j or not l_{j+1}) force all occurrence literals of one original
    variable to agree, which gives equisatisfiability.
    """
    occs: dict[int, list[tuple[int, int, int]]] = {}
    for ci, cl in enumerate(f.clauses):
        if len(cl) != 3 or len({abs(l) for l in cl}) != 3:
            raise InputError(
                f"clause {ci} is not on exactly 3 distinct variables; "
                "run preprocess_to_exactly3 first")
        for pos_in_clause, l in enumerate(cl):
            occs.setdefault(abs(l), []).append((ci, pos_in_clause, l))
    for v, lst in occs.items():
        if len(lst) == 1:
            raise InputError(
                f"variable {v} occurs only once; run preprocess_to_exactly3 "
                "first (single occurrences must be eliminated)")

    next_var = 0
    new_three: list[list[int]] = [[0, 0, 0] for _ in f.clauses]
    cycle_lits: dict[int, list[int]] = {}
    for v in sorted(occs):
        lits = []
        for ci, pos_in_clause, l in occs[v]:
            next_var += 1
            copy = next_var
            new_three[ci][pos_in_clause] = copy
            lits.append(copy if l > 0 else -copy)
        cycle_lits[v] = lits

    clauses: list[tuple[int, ...]] = [tuple(cl) for cl in new_three]
    for v in sorted(cycle_lits):
        lits = cycle_lits[v]
        k = len(lits)
        for j in range(k):
            clauses.append((lits[j], -lits[(j + 1) % k]))

    formula = CnfFormula(next_var, clauses)
    table: dict[int, tuple[int, tuple[int, ...], int]] = {}
    for v in range(1, next_var + 1):
        three = [ci for ci, cl in enumerate(clauses)
                 if len(cl) == 3 and v in cl]
        pos2 = tuple(ci for ci, cl in enumerate(clauses)
                     if len(cl) == 2 and v in cl)
        negc = [ci for ci, cl in enumerate(clauses) if -v in cl]
        table[v] = (three[0], pos2, negc[0])
    return RestrictedForm(formula, table)


# -- graph constructions ------------------------------------------------

class ReductionTrace:
    __slots__ = ("colored_graph", "vertex_roles", "size_stats")

    def __init__(self, colored_graph: ColoredGraph,
                 vertex_roles: dict[str, str]):
        self.colored_graph = colored_graph
        self.vertex_roles = dict(vertex_roles)
        g = colored_graph.graph
        self.size_stats = {
            "vertices": g.n,
            "edges": g.edge_count(),
            "max_degree": g.max_degree(),
        }

    def to_json_dict(self) -> dict:
        from .graphs import colored_graph_to_json_dict
        return {
            "colored_graph": colored_graph_to_json_dict(self.colored_graph),
            "vertex_roles": {v: self.vertex_roles[v]
                             for v in sorted(self.vertex_roles)},
            "size_stats": dict(self.size_stats),
        }


def build_reduction_graph(r: RestrictedForm) -> ReductionTrace:
    """The colored graph of a restricted formula: a 6-vertex gadget per
    variable, a triangle per 3-clause, and an L/p pair per 2-clause."""
    f = r.formula
    g = Graph()
    gamma: dict[str, str] = {}
    roles: dict[str, str] = {}

    for v in range(1, f.num_vars + 1):
        whites = [f"x{v}_1", f"x{v}_2", f"x{v}_N"]
        blacks = [f"A{v}", f"B{v}", f"C{v}"]
        for name, role in zip(whites, ("literal-x1", "literal-x2", "literal-xN")):
            g.add_vertex(name)
            gamma[name] = WHITE
            roles[name] = role
        for name, role in zip(blacks, ("private-A", "private-B", "private-C")):
            g.add_vertex(name)
            gamma[name] = BLACK
            roles[name] = role
        for w in whites:
            for b in blacks:
                g.add_edge(w, b)
        g.add_edge(whites[0], whites[1])
        g.add_edge(blacks[2], blacks[0])
        g.add_edge(blacks[2], blacks[1])

    def literal_vertex(ci: int, lit: int) -> str:
        v = abs(lit)
        three, pos2, negc = r.occurrence_table[v]
        if lit > 0 and ci == three:
            return f"x{v}_1"
        if lit > 0 and ci in pos2:
            return f"x{v}_2"
        if lit < 0 and ci == negc:
            return f"x{v}_N"
        raise AssertionError(f"occurrence table misses clause {ci} lit {lit}")

    for ci, cl in enumerate(f.clauses):
        if len(cl) == 3:
            corners = [literal_vertex(ci, l) for l in cl]
            for i in range(3):
                g.add_edge(corners[i], corners[(i + 1) % 3])
        else:
            u, w = (literal_vertex(ci, l) for l in cl)
            L, p = f"L{ci}", f"p{ci}"
            g.add_vertex(L)
            g.add_vertex(p)
            gamma[L] = BLACK
            gamma[p] = BLACK
            roles[L] = "clause-L"
            roles[p] = "clause-p"
            g.add_edge(u, w)
            g.add_edge(u, L)
            g.add_edge(w, L)
            g.add_edge(L, p)

    return ReductionTrace(ColoredGraph(g, gamma), roles)


class GraphTrace:
    """A plain graph plus the roles of vertices added by a rewrite."""

    __slots__ = ("graph", "vertex_roles", "size_stats")

    def __init__(self, graph: Graph, vertex_roles: dict[str, str]):
        self.graph = graph
        self.vertex_roles = dict(vertex_roles)
        self.size_stats = {
            "vertices": graph.n,
            "edges": graph.edge_count(),
            "max_degree": graph.max_degree(),
        }

    def to_json_dict(self) -> dict:
        from .graphs import graph_to_json_dict
        return {
            "graph": graph_to_json_dict(self.graph),
            "vertex_roles": {v: self.vertex_roles[v]
                             for v in sorted(self.vertex_roles)},
            "size_stats": dict(self.size_stats),
        }


def _attach_hub_gadget(g: Graph, roles: dict[str, str], v: str,
                       leaves: int) -> None:
    # Gadget names derive from the host vertex; the loop primes the tag
    # so that stacked constructions (decolorize then lift) stay total.
    tag = v
    def names(t):
        out = [f"a{t}_0", f"b{t}_0"]
        out += [f"{p}{t}_{i}" for p in "ab" for i in range(1, leaves + 1)]
        return out
    while any(g.has_vertex(name) for name in names(tag)):
        tag += "'"
    a0, b0 = f"a{tag}_0", f"b{tag}_0"
    for name in (a0, b0):
        g.add_vertex(name)
        roles[name] = "gadget-internal"
    g.add_edge(v, a0)
    g.add_edge(v, b0)
    g.add_edge(a0, b0)
    for hub, prefix in ((a0, "a"), (b0, "b")):
        for i in range(1, leaves + 1):
            leaf = f"{prefix}{tag}_{i}"
            g.add_vertex(leaf)
            roles[leaf] = "gadget-internal"
            g.add_edge(hub, leaf)


def decolorize(cg: ColoredGraph) -> GraphTrace:
    """Replace every black vertex by the 9-vertex/9-edge hub gadget: the
    gadget pins one of the vertex's two intervals, leaving a single free
    interval exactly as the black coloring demanded."""
    g = cg.graph.copy()
    roles = {v: "original" for v in cg.graph.vertices}
    for v in cg.graph.vertices:
        if cg.gamma[v] == BLACK:
            _attach_hub_gadget(g, roles, v, leaves=3)
    return GraphTrace(g, roles)


def black_vertex_gadget(name: str = "v") -> Graph:
    """The standalone hub gadget on 9 vertices used by decolorize."""
    g = Graph()
    g.add_vertex(name)
    _attach_hub_gadget(g, {}, name, leaves=3)
    return g


def lift_to_d(g: Graph, d: int) -> GraphTrace:
    """Attach a hub gadget with 2d-1 leaves per hub to every vertex,
    pinning d-1 of its d intervals; d >= 3."""
    if d < 3:
        raise InputError(f"lift needs d >= 3, got {d}")
    out = g.copy()
    roles = {v: "original" for v in g.vertices}
    for v in g.vertices:
        _attach_hub_gadget(out, roles, v, leaves=2 * d - 1)
    return GraphTrace(out, roles)


# -- end to end ---------------------------------------------------------

class EndToEndReport:
    __slots__ = ("sat", "restricted_sat", "recognition", "agree",
                 "complete", "sizes", "timings_ms", "notes")

    def __init__(self):
        self.sat: Optional[bool] = None
        self.restricted_sat: Optional[bool] = None
        self.recognition: dict[str, Optional[bool]] = {}
        self.agree: Optional[bool] = None
        self.complete = False
        self.sizes: dict[str, int] = {}
        self.timings_ms: dict[str, int] = {}
        self.notes: list[str] = []

    def to_json_dict(self, include_timings: bool = True) -> dict:
        out = {
            "sat": self.sat,
            "restricted_sat": self.restricted_sat,
            "recognition": dict(self.recognition),
            "agree": self.agree,
            "complete": self.complete,
            "sizes": dict(self.sizes),
            "notes": list(self.notes),
        }
        if include_timings:
            out["timings_ms"] = dict(self.timings_ms)
        return out


def end_to_end_check(f: CnfFormula, *, budget_ms: Optional[int] = None,
                     oracle: str = "auto") -> EndToEndReport:
    """Compare brute-force satisfiability against graph recognition on
    the constructed colored graph.

    oracle: "order", "splits", "both", or "auto" (those within
    capacity).  A blown budget leaves recognition entries at None and
    the report marked incomplete rather than raising.
    """
    if oracle not in ("auto", "order", "splits", "both"):
        raise InputError(f"unknown oracle {oracle!r}")
    rep = EndToEndReport()
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000

    def left_ms() -> Optional[int]:
        if deadline is None:
            return None
        return max(1, int((deadline - time.monotonic()) * 1000))

    t0 = time.monotonic()
    rep.sat = brute_force_sat(f) is not None
    rep.timings_ms["sat"] = int((time.monotonic() - t0) * 1000)

    t0 = time.monotonic()
    restricted = as_restricted(f)
    if restricted is not None:
        rep.notes.append("input already in restricted form")
    else:
        restricted = restrict_sat(preprocess_to_exactly3(f))
    rep.restricted_sat = brute_force_sat(restricted.formula) is not None
    rep.timings_ms["restricted_sat"] = int((time.monotonic() - t0) * 1000)

    trace = build_reduction_graph(restricted)
    cg = trace.colored_graph
    rep.sizes = dict(trace.size_stats)
    rep.sizes["restricted_vars"] = restricted.formula.num_vars
    rep.sizes["restricted_clauses"] = len(restricted.formula.clauses)

    want_order = oracle in ("order", "both")
    want_splits = oracle in ("splits", "both")
    if oracle == "auto":
        tokens = sum(colored_profile(cg).values())
        want_order = tokens <= TOKEN_CAP
        nw = sum(1 for v in cg.graph.vertices if cg.gamma[v] == WHITE)
        want_splits = (nw <= _splits.WHITE_VERTEX_CAP
                       and cg.graph.edge_count() <= _splits.EDGE_CAP)
        if not want_order:
            rep.notes.append("order oracle skipped: token capacity")
        if not want_splits:
            rep.notes.append("split oracle skipped: capacity")

    if want_order:
        t0 = time.monotonic()
        try:
            fam = recognize_unit_d(cg.graph, colored_profile(cg),
                                   budget_ms=left_ms())
            rep.recognition["order"] = fam is not None
        except BudgetExhausted:
            rep.recognition["order"] = None
            rep.notes.append("order oracle: budget exhausted")
        rep.timings_ms["order"] = int((time.monotonic() - t0) * 1000)
    if want_splits:
        t0 = time.monotonic()
        try:
            res = _splits.recognize_colored_unit2_via_splits(
                cg, budget_ms=left_ms())
            rep.recognition["splits"] = res is not None
        except BudgetExhausted:
            rep.recognition["splits"] = None
            rep.notes.append("split oracle: budget exhausted")
        rep.timings_ms["splits"] = int((time.monotonic() - t0) * 1000)

    answers = [a for a in rep.recognition.values() if a is not None]
    rep.agree = (rep.sat == rep.restricted_sat
                 and all(a == rep.sat for a in answers))
    rep.complete = bool(answers) and None not in rep.recognition.values()
    return rep
