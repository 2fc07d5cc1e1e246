"""Labeled undirected graphs and unit-interval obstruction certificates.

The graph type here is the carrier for everything else in the package:
gadget construction, split enumeration, and interval-family validation.
Vertex order is construction order and every algorithm iterates in that
order, so all outputs are deterministic for a fixed input.

Besides basic induced-subgraph machinery the module provides

* ``find_forbidden_unit_interval`` -- exact detection of an induced claw,
  net, tent, or hole (chordless cycle of length >= 4), the four
  obstructions whose joint absence characterizes unit interval graphs;
* ``canonical_form`` -- an isomorphism-invariant certificate string for
  small graphs, used to deduplicate enumerations and build the catalog
  of small graphs one representative per isomorphism class.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Optional

from .errors import InputError, check_capacity

WHITE = "white"
BLACK = "black"

CANONICAL_VERTEX_CAP = 24


class Graph:
    """Undirected simple graph over string vertex labels."""

    __slots__ = ("_vertices", "_index", "_masks")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable = ()):
        self._vertices: list[str] = []
        self._index: dict[str, int] = {}
        self._masks: list[int] = []
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction -------------------------------------------------

    def add_vertex(self, label: str) -> None:
        if not isinstance(label, str):
            raise InputError(f"vertex label must be a string, got {label!r}")
        if label in self._index:
            raise InputError(f"duplicate vertex label {label!r}")
        self._index[label] = len(self._vertices)
        self._vertices.append(label)
        self._masks.append(0)

    def add_edge(self, u: str, v: str) -> None:
        iu = self.index_of(u)
        iv = self.index_of(v)
        if iu == iv:
            raise InputError(f"loop edge at {u!r}")
        if self._masks[iu] >> iv & 1:
            raise InputError(f"duplicate edge ({u!r}, {v!r})")
        self._masks[iu] |= 1 << iv
        self._masks[iv] |= 1 << iu

    # -- queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self._vertices)

    def index_of(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"unknown vertex label {v!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def has_edge(self, u: str, v: str) -> bool:
        return self._masks[self.index_of(u)] >> self.index_of(v) & 1 == 1

    def degree(self, v: str) -> int:
        return self._masks[self.index_of(v)].bit_count()

    def neighbors(self, v: str) -> tuple[str, ...]:
        m = self._masks[self.index_of(v)]
        return tuple(self._vertices[i] for i in _bits(m))

    def edges(self) -> list[tuple[str, str]]:
        """All edges as (u, v) pairs with u before v in vertex order."""
        out = []
        for i, m in enumerate(self._masks):
            rest = m >> (i + 1) << (i + 1)
            for j in _bits(rest):
                out.append((self._vertices[i], self._vertices[j]))
        return out

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self._masks), default=0)

    def adjacency_masks(self) -> list[int]:
        """Adjacency as one bitmask per vertex, indexed by vertex order."""
        return list(self._masks)

    def copy(self) -> "Graph":
        g = Graph()
        g._vertices = list(self._vertices)
        g._index = dict(self._index)
        g._masks = list(self._masks)
        return g

    def relabeled(self, mapping: dict[str, str]) -> "Graph":
        """Same graph with every vertex label replaced via `mapping`."""
        g = Graph()
        for v in self._vertices:
            g.add_vertex(mapping[v])
        g._masks = list(self._masks)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._masks == other._masks

    def __hash__(self):
        return hash((tuple(self._vertices), tuple(self._masks)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


class ColoredGraph:
    """A graph plus a total white/black vertex coloring.

    White vertices stand for objects represented by two intervals,
    black vertices for objects represented by one.
    """

    __slots__ = ("graph", "gamma")

    def __init__(self, graph: Graph, gamma: dict[str, str]):
        for v in graph.vertices:
            if v not in gamma:
                raise InputError(f"coloring misses vertex {v!r}")
        for v, c in gamma.items():
            if not graph.has_vertex(v):
                raise InputError(f"coloring names unknown vertex {v!r}")
            if c not in (WHITE, BLACK):
                raise InputError(f"bad color {c!r} for vertex {v!r}")
        self.graph = graph
        self.gamma = dict(gamma)

    def color(self, v: str) -> str:
        return self.gamma[v]

    def white_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.graph.vertices if self.gamma[v] == WHITE)

    def black_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.graph.vertices if self.gamma[v] == BLACK)

    def __repr__(self) -> str:
        return (
            f"ColoredGraph(n={self.graph.n}, white={len(self.white_vertices())},"
            f" black={len(self.black_vertices())})"
        )


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# JSON exchange format
# ---------------------------------------------------------------------------


def graph_to_json_dict(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [[u, v] for u, v in g.edges()]}


def colored_graph_to_json_dict(cg: ColoredGraph) -> dict:
    d = graph_to_json_dict(cg.graph)
    d["colors"] = {v: cg.gamma[v] for v in cg.graph.vertices}
    return d


def graph_from_json_dict(data: dict):
    """Build a Graph (or ColoredGraph if a "colors" key is present)."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError("graph JSON must be an object with a 'vertices' key")
    g = Graph()
    for v in data["vertices"]:
        g.add_vertex(v)
    for pair in data.get("edges", ()):
        if len(pair) != 2:
            raise InputError(f"edge entry {pair!r} is not a pair")
        g.add_edge(pair[0], pair[1])
    if "colors" in data:
        return ColoredGraph(g, data["colors"])
    return g


# ---------------------------------------------------------------------------
# Induced subgraphs and obstruction certificates
# ---------------------------------------------------------------------------


def induced_subgraph(g: Graph, w: Iterable[str]) -> Graph:
    """Subgraph induced by the vertex set `w`, in host vertex order."""
    keep = set()
    for v in w:
        g.index_of(v)  # raises on unknown labels
        keep.add(v)
    sub = Graph()
    for v in g.vertices:
        if v in keep:
            sub.add_vertex(v)
    for u, v in g.edges():
        if u in keep and v in keep:
            sub.add_edge(u, v)
    return sub


class ForbiddenCertificate:
    """Witness of an induced claw, net, tent, or hole.

    Witness vertex order is part of the contract:

    * claw: [center, leaf, leaf, leaf]
    * net:  [t1, t2, t3, p1, p2, p3] with {t} a triangle, p_i pendant at t_i
    * tent: [t1, t2, t3, s1, s2, s3] with {t} a triangle and s_i adjacent
      to exactly the two triangle vertices other than t_i
    * hole: the cycle in cyclic order, length >= 4
    """

    __slots__ = ("kind", "witness")

    def __init__(self, kind: str, witness: Iterable[str]):
        if kind not in ("claw", "net", "tent", "hole"):
            raise InputError(f"unknown certificate kind {kind!r}")
        self.kind = kind
        self.witness = tuple(witness)

    def verify(self, g: Graph) -> bool:
        return verify_certificate(g, self)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness)}

    def __repr__(self) -> str:
        return f"ForbiddenCertificate({self.kind}, {list(self.witness)})"


def verify_certificate(g: Graph, cert: ForbiddenCertificate) -> bool:
    """Check that the witness induces exactly the named pattern in g."""
    w = cert.witness
    if len(set(w)) != len(w):
        return False
    for v in w:
        if not g.has_vertex(v):
            return False
    adj = g.has_edge
    if cert.kind == "claw":
        if len(w) != 4:
            return False
        c, a, b, d = w
        return (
            adj(c, a) and adj(c, b) and adj(c, d)
            and not adj(a, b) and not adj(a, d) and not adj(b, d)
        )
    if cert.kind in ("net", "tent"):
        if len(w) != 6:
            return False
        t = w[:3]
        s = w[3:]
        if not (adj(t[0], t[1]) and adj(t[0], t[2]) and adj(t[1], t[2])):
            return False
        if adj(s[0], s[1]) or adj(s[0], s[2]) or adj(s[1], s[2]):
            return False
        for i in range(3):
            for j in range(3):
                expect = (i != j) if cert.kind == "tent" else (i == j)
                if adj(s[i], t[j]) != expect:
                    return False
        return True
    if cert.kind == "hole":
        k = len(w)
        if k < 4:
            return False
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = (j - i == 1) or (i == 0 and j == k - 1)
                if adj(w[i], w[j]) != consecutive:
                    return False
        return True
    return False


def find_forbidden_unit_interval(g: Graph) -> Optional[ForbiddenCertificate]:
    """First induced claw / hole / net / tent in deterministic scan order.

    Returns None exactly when the graph is a unit interval graph (the
    equivalence with direct recognition is exercised exhaustively over
    the small-graph catalog in the test suite).
    """
    n = g.n
    masks = g.adjacency_masks()
    labels = g.vertices

    cert = _find_claw(n, masks, labels)
    if cert is not None:
        return cert
    cert = _find_hole(n, masks, labels)
    if cert is not None:
        return cert
    cert = _find_net_or_tent(n, masks, labels)
    return cert


def _find_claw(n, masks, labels) -> Optional[ForbiddenCertificate]:
    for c in range(n):
        nb = list(_bits(masks[c]))
        if len(nb) < 3:
            continue
        for ia, a in enumerate(nb):
            for ib in range(ia + 1, len(nb)):
                b = nb[ib]
                if masks[a] >> b & 1:
                    continue
                for ic in range(ib + 1, len(nb)):
                    d = nb[ic]
                    if masks[a] >> d & 1 or masks[b] >> d & 1:
                        continue
                    return ForbiddenCertificate(
                        "claw", (labels[c], labels[a], labels[b], labels[d])
                    )
    return None


def _find_hole(n, masks, labels) -> Optional[ForbiddenCertificate]:
    # For every induced path u - v - w, look for a shortest u..w path that
    # avoids N[v]; together with v it closes a chordless cycle of length
    # >= 4.  Every hole contains such a path, so the scan is complete.
    full = (1 << n) - 1
    for v in range(n):
        closed = masks[v] | (1 << v)
        nb = list(_bits(masks[v]))
        for iu, u in enumerate(nb):
            for iw in range(iu + 1, len(nb)):
                w = nb[iw]
                if masks[u] >> w & 1:
                    continue
                allowed = (full & ~closed) | (1 << u) | (1 << w)
                path = _bfs_path(masks, u, w, allowed)
                if path is not None and len(path) >= 3:
                    return ForbiddenCertificate(
                        "hole", tuple([labels[v]] + [labels[p] for p in path])
                    )
    return None


def _bfs_path(masks, source, target, allowed) -> Optional[list[int]]:
    """Shortest path from source to target inside the allowed vertex set."""
    parent = {source: -1}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if x == target:
            path = []
            while x != -1:
                path.append(x)
                x = parent[x]
            path.reverse()
            return path
        for y in _bits(masks[x] & allowed):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


def _find_net_or_tent(n, masks, labels) -> Optional[ForbiddenCertificate]:
    best = None
    for a in range(n):
        for b in _bits(masks[a] >> (a + 1) << (a + 1)):
            common = masks[a] & masks[b]
            for c in _bits(common >> (b + 1) << (b + 1)):
                base = (1 << a) | (1 << b) | (1 << c)
                # net: one private pendant per triangle corner
                pa = masks[a] & ~masks[b] & ~masks[c] & ~base
                pb = masks[b] & ~masks[a] & ~masks[c] & ~base
                pc = masks[c] & ~masks[a] & ~masks[b] & ~base
                hit = _pick_independent_triple(masks, pa, pb, pc)
                if hit is not None:
                    return ForbiddenCertificate(
                        "net",
                        (labels[a], labels[b], labels[c],
                         labels[hit[0]], labels[hit[1]], labels[hit[2]]),
                    )
                # tent: s_i sees the two corners other than t_i
                sa = masks[b] & masks[c] & ~masks[a] & ~base
                sb = masks[a] & masks[c] & ~masks[b] & ~base
                sc = masks[a] & masks[b] & ~masks[c] & ~base
                hit = _pick_independent_triple(masks, sa, sb, sc)
                if hit is not None:
                    return ForbiddenCertificate(
                        "tent",
                        (labels[a], labels[b], labels[c],
                         labels[hit[0]], labels[hit[1]], labels[hit[2]]),
                    )
    return best


def _pick_independent_triple(masks, ca, cb, cc) -> Optional[tuple[int, int, int]]:
    if not (ca and cb and cc):
        return None
    for x in _bits(ca):
        for y in _bits(cb & ~masks[x]):
            for z in _bits(cc & ~masks[x] & ~masks[y]):
                return (x, y, z)
    return None


# ---------------------------------------------------------------------------
# Canonical form for small graphs
# ---------------------------------------------------------------------------


def canonical_form(g: Graph) -> str:
    """Isomorphism-invariant certificate string for graphs up to 24 vertices.

    Two graphs map to the same string exactly when they are isomorphic.
    Implemented as iterated degree refinement plus individualization
    backtracking with discovered-automorphism pruning; only meant for
    desk-scale deduplication, not for isomorphism at scale.
    """
    check_capacity(g.n, CANONICAL_VERTEX_CAP, "canonical_form vertex count")
    cert, _, _ = _canonical_search(g.n, g.adjacency_masks())
    return f"{g.n}:{cert:x}"


def canonical_order(g: Graph) -> list[str]:
    """A canonical vertex ordering (labels) realizing canonical_form."""
    check_capacity(g.n, CANONICAL_VERTEX_CAP, "canonical_form vertex count")
    _, order, _ = _canonical_search(g.n, g.adjacency_masks())
    labels = g.vertices
    return [labels[i] for i in order]


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    """Generators (as index permutations) found during canonical search.

    The returned set need not generate the full automorphism group in
    pathological cases; callers may only rely on every returned
    permutation being a genuine automorphism.
    """
    check_capacity(g.n, CANONICAL_VERTEX_CAP, "canonical_form vertex count")
    _, _, auts = _canonical_search(g.n, g.adjacency_masks())
    return auts


def canonical_cert_masks(n: int, masks: list[int]):
    """Low-level canonical search on raw adjacency masks.

    Returns (certificate int, canonical order, automorphism generators).
    The catalog generator calls this in a tight loop, bypassing Graph
    object construction.
    """
    return _canonical_search(n, masks)


_MAX_STORED_AUTS = 3000


def _refine(n: int, masks: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Stable equitable refinement of an ordered partition."""
    while True:
        cellmasks = [_cell_mask(c) for c in cells]
        newcells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                newcells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple((masks[v] & cm).bit_count() for cm in cellmasks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                newcells.append(cell)
            else:
                changed = True
                for sig in sorted(groups):
                    newcells.append(groups[sig])
        cells = newcells
        if not changed:
            return cells


def _cell_mask(cell: list[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _canonical_search(n: int, masks: list[int]):
    if n == 0:
        return 0, [], []

    best_cert: Optional[int] = None
    best_order: Optional[list[int]] = None
    auts: list[tuple[int, ...]] = []

    def leaf(cells: list[list[int]]) -> None:
        nonlocal best_cert, best_order
        order = [c[0] for c in cells]
        cert = 0
        bit = 0
        for i in range(n):
            mi = masks[order[i]]
            for j in range(i + 1, n):
                if mi >> order[j] & 1:
                    cert |= 1 << bit
                bit += 1
        if best_cert is None or cert > best_cert:
            best_cert = cert
            best_order = order
        elif cert == best_cert and len(auts) < _MAX_STORED_AUTS:
            # equal certificates expose an automorphism: send the vertex at
            # each canonical position in the best leaf to the vertex at the
            # same position here
            theta = [0] * n
            for pos in range(n):
                theta[best_order[pos]] = order[pos]
            auts.append(tuple(theta))

    def recurse(cells: list[list[int]], prefix: list[int]) -> None:
        target = -1
        for ci, cell in enumerate(cells):
            if len(cell) > 1:
                target = ci
                break
        if target < 0:
            leaf(cells)
            return
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if _in_explored_orbit(n, v, explored, prefix, auts):
                continue
            explored.append(v)
            split = (
                cells[:target]
                + [[v], [u for u in cell if u != v]]
                + cells[target + 1:]
            )
            recurse(_refine(n, masks, split), prefix + [v])

    recurse(_refine(n, masks, [list(range(n))]), [])
    assert best_cert is not None and best_order is not None
    return best_cert, best_order, auts


def _in_explored_orbit(n, v, explored, prefix, auts) -> bool:
    """Is v equivalent to an explored sibling under an automorphism
    that fixes the individualization prefix pointwise?"""
    if not explored or not auts:
        return False
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for theta in auts:
        fixes = True
        for p in prefix:
            if theta[p] != p:
                fixes = False
                break
        if not fixes:
            continue
        for a in range(n):
            ra, rb = find(a), find(theta[a])
            if ra != rb:
                parent[ra] = rb
    rv = find(v)
    return any(find(u) == rv for u in explored)
