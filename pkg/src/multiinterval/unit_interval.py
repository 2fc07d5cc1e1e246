"""Exact unit interval graph recognition with certificates on both branches.

Success returns an indifference ordering (every closed neighborhood is a
consecutive run of positions) together with a closed unit-interval family
realizing the graph; failure returns an induced claw / net / tent / hole
witness from :mod:`multiinterval.graphs`.

The recognizer runs three lexicographic BFS sweeps, each reusing the
previous sweep's order for tie-breaking (pick the tied vertex seen
latest), and then verifies the candidate order.  Verification is the
actual correctness anchor; the sweeps only have to hit a valid order for
every unit interval graph, which the exhaustive small-graph tests pin
down.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .errors import InputError
from .graphs import ForbiddenCertificate, Graph, find_forbidden_unit_interval
from .intervals import CLOSED, DIntervalFamily, Interval


class IndifferenceOrdering:
    """A vertex order whose closed neighborhoods are consecutive."""

    __slots__ = ("order",)

    def __init__(self, order):
        self.order = tuple(order)

    def violation(self, g: Graph) -> Optional[tuple[str, str, str]]:
        """A triple (u, v, w) breaking the umbrella rule, or None.

        The rule: whenever u comes before v before w and u ~ w, both
        u ~ v and v ~ w must hold.
        """
        n = len(self.order)
        if set(self.order) != set(g.vertices) or n != g.n:
            raise InputError("ordering is not a permutation of the vertices")
        pos = {v: i for i, v in enumerate(self.order)}
        masks = g.adjacency_masks()
        remap = [0] * n
        for v in g.vertices:
            m = masks[g.index_of(v)]
            out = 0
            while m:
                low = m & -m
                out |= 1 << pos[g.vertices[low.bit_length() - 1]]
                m ^= low
            remap[pos[v]] = out
        for p in range(n):
            closed = remap[p] | (1 << p)
            shifted = closed >> (closed & -closed).bit_length() - 1
            if shifted & (shifted + 1):
                # not contiguous; dig out an explicit violating triple
                for i in range(n):
                    for k in range(i + 2, n):
                        if remap[i] >> k & 1:
                            for j in range(i + 1, k):
                                if not (remap[i] >> j & 1
                                        and remap[j] >> k & 1):
                                    return (self.order[i], self.order[j],
                                            self.order[k])
                raise AssertionError("contiguity and triple scan disagree")
        return None


def _lbfs(n: int, masks: list[int], tie_pos: Optional[list[int]]) -> list[int]:
    """One lexicographic BFS sweep over vertex indices.

    With tie_pos given, ties inside the lexicographically first class are
    broken toward the vertex appearing latest in the previous sweep;
    otherwise toward the smallest index.
    """
    classes: list[list[int]] = [list(range(n))]
    order: list[int] = []
    while classes:
        first = classes[0]
        if tie_pos is None:
            v = first[0]
        else:
            v = max(first, key=lambda u: tie_pos[u])
        out: list[list[int]] = []
        for cls in classes:
            inn = [u for u in cls if u != v and masks[v] >> u & 1]
            rest = [u for u in cls if u != v and not masks[v] >> u & 1]
            if inn:
                out.append(inn)
            if rest:
                out.append(rest)
        order.append(v)
        classes = out
    return order


def unit_order_masks(n: int, masks: list[int]) -> Optional[list[int]]:
    """Index order with consecutive closed neighborhoods, or None.

    Low-level entry used by the enumeration engines; label-free and
    allocation-light.
    """
    if n == 0:
        return []
    s1 = _lbfs(n, masks, None)
    pos1 = [0] * n
    for p, v in enumerate(s1):
        pos1[v] = p
    s2 = _lbfs(n, masks, pos1)
    pos2 = [0] * n
    for p, v in enumerate(s2):
        pos2[v] = p
    s3 = _lbfs(n, masks, pos2)
    pos3 = [0] * n
    for p, v in enumerate(s3):
        pos3[v] = p
    for v in range(n):
        m = masks[v]
        closed = 1 << pos3[v]
        while m:
            low = m & -m
            closed |= 1 << pos3[low.bit_length() - 1]
            m ^= low
        shifted = closed >> (closed & -closed).bit_length() - 1
        if shifted & (shifted + 1):
            return None
    return s3


def recognize_unit_interval(
    g: Graph,
) -> Union[tuple[IndifferenceOrdering, DIntervalFamily], ForbiddenCertificate]:
    """Either (ordering, closed unit family) or a forbidden-subgraph witness."""
    order = unit_order_masks(g.n, g.adjacency_masks())
    if order is None:
        cert = find_forbidden_unit_interval(g)
        if cert is None:
            raise AssertionError(
                "no indifference ordering found but no obstruction either; "
                "this is a bug")
        return cert
    labels = g.vertices
    ordering = IndifferenceOrdering(labels[i] for i in order)
    return ordering, proper_to_unit(ordering, g)


def is_unit_interval(g: Graph) -> bool:
    return unit_order_masks(g.n, g.adjacency_masks()) is not None


def proper_to_unit(ordering: IndifferenceOrdering, g: Graph) -> DIntervalFamily:
    """Closed unit intervals realizing g from an indifference ordering.

    Left endpoints increase strictly; vertex j overlaps vertex i < j
    exactly when l_j < l_i + 1.  Midpoint choices keep every constraint
    strict, so no intersection ever degenerates to a single point.
    Components are separated by a gap of 2.
    """
    bad = ordering.violation(g)
    if bad is not None:
        raise InputError(
            f"ordering violates the consecutive-neighborhood rule on {bad}")
    n = g.n
    order = ordering.order
    pos = {v: i for i, v in enumerate(order)}
    lefts: list[Fraction] = []
    for j, v in enumerate(order):
        if j == 0:
            lefts.append(Fraction(0))
            continue
        nbr_before = sorted(pos[u] for u in g.neighbors(v) if pos[u] < j)
        # earlier neighbors form a suffix of 0..j-1 (umbrella rule)
        lower = lefts[j - 1]
        if nbr_before:
            i0 = nbr_before[0]
            if i0 > 0:
                lower = max(lower, lefts[i0 - 1] + 1)
            upper = lefts[i0] + 1
            lefts.append((lower + upper) / 2)
        else:
            lefts.append(lefts[j - 1] + 3)
    assignment = {v: [Interval(lefts[j], lefts[j] + 1)]
                  for j, v in enumerate(order)}
    return DIntervalFamily(1, CLOSED, assignment)
