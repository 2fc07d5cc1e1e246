"""Exact d-interval families and their intersection graphs.

A d-interval assigns to each vertex d pairwise disjoint intervals with
rational endpoints.  The family-wide openness flag decides both the
intersection rule and the disjointness rule:

* closed intervals: sharing an endpoint counts as intersecting, so two
  intervals of the same vertex need a positive gap between them;
* open intervals: strict overlap is required to intersect, so intervals
  of one vertex may share an endpoint.

All arithmetic is exact (fractions.Fraction); no decision in this module
ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .graphs import BLACK, WHITE, ColoredGraph, Graph

CLOSED = "closed"
OPEN = "open"


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InputError(f"endpoint {value!r} is not an exact rational")


class Interval:
    """A nonempty open or closed interval with rational endpoints."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = _frac(left)
        self.right = _frac(right)
        if not self.left < self.right:
            raise InputError(f"degenerate interval [{self.left}, {self.right}]")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def intersects(self, other: "Interval", openness: str) -> bool:
        lo = max(self.left, other.left)
        hi = min(self.right, other.right)
        if openness == CLOSED:
            return lo <= hi
        return lo < hi

    def translate(self, delta) -> "Interval":
        d = _frac(delta)
        return Interval(self.left + d, self.right + d)

    def scale(self, factor) -> "Interval":
        f = _frac(factor)
        if f <= 0:
            raise InputError("scale factor must be positive")
        return Interval(self.left * f, self.right * f)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"Interval({self.left}, {self.right})"


class DIntervalFamily:
    """Per-vertex lists of d disjoint intervals under one openness flag."""

    __slots__ = ("d", "openness", "assignment")

    def __init__(self, d: int, openness: str,
                 assignment: dict[str, Sequence[Interval]]):
        if d < 1:
            raise InputError(f"d must be positive, got {d}")
        if openness not in (CLOSED, OPEN):
            raise InputError(f"openness must be '{CLOSED}' or '{OPEN}'")
        self.d = d
        self.openness = openness
        self.assignment: dict[str, tuple[Interval, ...]] = {}
        for v, ivs in assignment.items():
            ivs = tuple(ivs)
            if len(ivs) != d:
                raise InputError(
                    f"vertex {v!r} has {len(ivs)} intervals, expected d={d}")
            self.assignment[v] = ivs
        for v in self.assignment:
            bad = self._disjointness_violation(v)
            if bad is not None:
                i, j = bad
                raise InputError(
                    f"intervals {i} and {j} of vertex {v!r} are not disjoint "
                    f"under the {openness} convention")

    def _disjointness_violation(self, v: str) -> Optional[tuple[int, int]]:
        ivs = self.assignment[v]
        for i in range(len(ivs)):
            for j in range(i + 1, len(ivs)):
                if ivs[i].intersects(ivs[j], self.openness):
                    return (i, j)
        return None

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.assignment)

    def intervals_of(self, v: str) -> tuple[Interval, ...]:
        try:
            return self.assignment[v]
        except KeyError:
            raise InputError(f"family has no vertex {v!r}") from None

    def all_intervals(self) -> list[tuple[str, int, Interval]]:
        out = []
        for v, ivs in self.assignment.items():
            for k, iv in enumerate(ivs):
                out.append((v, k, iv))
        return out

    def vertices_intersect(self, u: str, v: str) -> bool:
        for a in self.assignment[u]:
            for b in self.assignment[v]:
                if a.intersects(b, self.openness):
                    return True
        return False

    def _rebuild(self, assignment) -> "DIntervalFamily":
        return DIntervalFamily(self.d, self.openness, assignment)

    def scaled(self, factor) -> "DIntervalFamily":
        return self._rebuild({v: [iv.scale(factor) for iv in ivs]
                              for v, ivs in self.assignment.items()})

    def translated(self, delta) -> "DIntervalFamily":
        return self._rebuild({v: [iv.translate(delta) for iv in ivs]
                              for v, ivs in self.assignment.items()})

    def __repr__(self):
        return (f"DIntervalFamily(d={self.d}, {self.openness}, "
                f"{len(self.assignment)} vertices)")


# ---------------------------------------------------------------------------
# JSON exchange format
# ---------------------------------------------------------------------------


def family_to_json_dict(fam: DIntervalFamily) -> dict:
    enc = {}
    for v, ivs in fam.assignment.items():
        enc[v] = [
            [iv.left.numerator, iv.left.denominator,
             iv.right.numerator, iv.right.denominator]
            for iv in ivs
        ]
    return {"d": fam.d, "openness": fam.openness, "intervals": enc}


def family_from_json_dict(data: dict) -> DIntervalFamily:
    try:
        d = data["d"]
        openness = data["openness"]
        raw = data["intervals"]
    except (TypeError, KeyError) as exc:
        raise InputError("representation JSON needs d/openness/intervals") from exc
    assignment = {}
    for v, ivs in raw.items():
        decoded = []
        for entry in ivs:
            if len(entry) != 4:
                raise InputError(
                    f"interval entry {entry!r} of {v!r} is not a 4-tuple")
            nl, dl, nr, dr = entry
            decoded.append(Interval(Fraction(nl, dl), Fraction(nr, dr)))
        assignment[v] = decoded
    counts = {len(ivs) for ivs in assignment.values()}
    if counts and counts != {d}:
        # per-vertex counts differ (colored representation)
        return VariableCountFamily(openness, assignment)
    return DIntervalFamily(d, openness, assignment)


# ---------------------------------------------------------------------------
# Intersection graph, depth, classification
# ---------------------------------------------------------------------------


def intersection_graph(fam: DIntervalFamily) -> Graph:
    """The graph whose edges are the intersecting vertex pairs of fam."""
    verts = list(fam.assignment)
    g = Graph(verts)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if fam.vertices_intersect(u, v):
                g.add_edge(u, v)
    return g


def depth(fam: DIntervalFamily) -> int:
    """Maximum number of intervals of the family sharing a common point.

    Endpoint sweep.  For closed intervals, openings are processed before
    closings at equal coordinates (a shared endpoint is a shared point);
    for open intervals, closings come first.
    """
    events = []
    count = 0
    for _, _, iv in fam.all_intervals():
        events.append((iv.left, "open"))
        events.append((iv.right, "close"))
        count += 1
    if count == 0:
        raise InputError("depth of an empty family is undefined")
    if fam.openness == CLOSED:
        order = {"open": 0, "close": 1}
    else:
        order = {"close": 0, "open": 1}
    events.sort(key=lambda e: (e[0], order[e[1]]))
    best = 0
    active = 0
    for _, kind in events:
        if kind == "open":
            active += 1
            if active > best:
                best = active
        else:
            active -= 1
    return best


class ClassReport:
    """Facts about a family: unit / balanced / integer length-x / depth."""

    __slots__ = ("is_unit", "is_balanced", "integer_x", "depth")

    def __init__(self, is_unit: bool, is_balanced: bool,
                 integer_x: Optional[int], depth_value: int):
        self.is_unit = is_unit
        self.is_balanced = is_balanced
        self.integer_x = integer_x
        self.depth = depth_value

    def to_json_dict(self) -> dict:
        return {
            "is_unit": self.is_unit,
            "is_balanced": self.is_balanced,
            "integer_x": self.integer_x,
            "depth": self.depth,
        }

    def __repr__(self):
        return (f"ClassReport(unit={self.is_unit}, balanced={self.is_balanced},"
                f" integer_x={self.integer_x}, depth={self.depth})")


def classify(fam: DIntervalFamily) -> ClassReport:
    lengths = set()
    balanced = True
    for v, ivs in fam.assignment.items():
        own = {iv.length for iv in ivs}
        if len(own) > 1:
            balanced = False
        lengths |= own
    if not lengths:
        # no intervals at all: vacuously unit and balanced, nothing covers
        # any point, and no common length exists to report
        return ClassReport(True, True, None, 0)
    is_unit = lengths == {Fraction(1)}

    integer_x: Optional[int] = None
    if fam.openness == OPEN and len(lengths) == 1:
        x = next(iter(lengths))
        if x.denominator == 1:
            all_int = all(
                iv.left.denominator == 1 and iv.right.denominator == 1
                for _, _, iv in fam.all_intervals())
            if all_int:
                integer_x = x.numerator
    return ClassReport(is_unit, balanced, integer_x, depth(fam))


# ---------------------------------------------------------------------------
# Representation validation
# ---------------------------------------------------------------------------


class ValidationReport:
    """Differences between a graph and a family that claims to represent it."""

    __slots__ = ("missing_edges", "excess_edges", "disjointness_violations",
                 "class_violations")

    def __init__(self):
        self.missing_edges: list[tuple[str, str]] = []
        self.excess_edges: list[tuple[str, str]] = []
        self.disjointness_violations: list[tuple[str, int, int]] = []
        self.class_violations: list[str] = []

    def ok(self) -> bool:
        return not (self.missing_edges or self.excess_edges
                    or self.disjointness_violations or self.class_violations)

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok(),
            "missing_edges": [list(e) for e in self.missing_edges],
            "excess_edges": [list(e) for e in self.excess_edges],
            "disjointness_violations":
                [list(t) for t in self.disjointness_violations],
            "class_violations": list(self.class_violations),
        }

    def __repr__(self):
        return f"ValidationReport(ok={self.ok()})"


def validate_representation(g: Graph, fam: DIntervalFamily,
                            required: Optional[dict] = None,
                            colored: Optional[ColoredGraph] = None
                            ) -> ValidationReport:
    """Check that fam represents g, plus optional class constraints.

    `required` may contain: "unit": True, "balanced": True, "integer_x": x,
    "open"/"closed": True, "max_depth": r, "counts": {vertex: k} for exact
    per-vertex interval counts (a colored graph can be passed instead to
    derive counts: white = 2, black = 1).

    Mismatched vertex sets are an input error, not a report entry.
    """
    gv = set(g.vertices)
    fv = set(fam.assignment)
    if gv != fv:
        raise InputError(
            f"vertex mismatch: graph has {sorted(gv - fv)} extra, "
            f"family has {sorted(fv - gv)} extra")

    report = ValidationReport()

    for v in fam.assignment:
        bad = fam._disjointness_violation(v)
        if bad is not None:
            report.disjointness_violations.append((v, bad[0], bad[1]))

    verts = list(g.vertices)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            has = g.has_edge(u, v)
            meets = fam.vertices_intersect(u, v)
            if has and not meets:
                report.missing_edges.append((u, v))
            elif meets and not has:
                report.excess_edges.append((u, v))

    required = dict(required or {})
    if colored is not None:
        counts = {v: (2 if colored.gamma[v] == WHITE else 1)
                  for v in colored.graph.vertices}
        required.setdefault("counts", counts)

    if required:
        rep = classify(fam)
        if required.get("unit") and not rep.is_unit:
            report.class_violations.append("not a unit family")
        if required.get("balanced") and not rep.is_balanced:
            report.class_violations.append("not a balanced family")
        if "integer_x" in required and rep.integer_x != required["integer_x"]:
            report.class_violations.append(
                f"integer length {required['integer_x']} required, "
                f"classified {rep.integer_x}")
        if required.get("open") and fam.openness != OPEN:
            report.class_violations.append("open intervals required")
        if required.get("closed") and fam.openness != CLOSED:
            report.class_violations.append("closed intervals required")
        if "max_depth" in required and rep.depth > required["max_depth"]:
            report.class_violations.append(
                f"depth {rep.depth} exceeds bound {required['max_depth']}")
        if "counts" in required:
            for v, want in required["counts"].items():
                got = len(fam.assignment.get(v, ()))
                if got != want:
                    report.class_violations.append(
                        f"vertex {v!r} has {got} intervals, expected {want}")
    return report


def restrict_to_counts(fam: DIntervalFamily,
                       counts: dict[str, int]) -> "VariableCountFamily":
    """View of a uniform-d family keeping only the first counts[v] intervals."""
    return VariableCountFamily(fam.openness,
                               {v: fam.assignment[v][:counts[v]]
                                for v in fam.assignment})


class VariableCountFamily(DIntervalFamily):
    """Interval family where vertices may carry different interval counts.

    Used for colored representations (white vertices two intervals, black
    vertices one).  Everything except the fixed-d invariant behaves as in
    DIntervalFamily.
    """

    def __init__(self, openness: str, assignment: dict[str, Sequence[Interval]]):
        if openness not in (CLOSED, OPEN):
            raise InputError(f"openness must be '{CLOSED}' or '{OPEN}'")
        self.d = max((len(v) for v in assignment.values()), default=1)
        self.openness = openness
        self.assignment = {v: tuple(ivs) for v, ivs in assignment.items()}
        for v in self.assignment:
            bad = self._disjointness_violation(v)
            if bad is not None:
                i, j = bad
                raise InputError(
                    f"intervals {i} and {j} of vertex {v!r} are not disjoint "
                    f"under the {openness} convention")

    def _rebuild(self, assignment) -> "VariableCountFamily":
        return VariableCountFamily(self.openness, assignment)
