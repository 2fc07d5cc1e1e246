"""
Exhaustive search for fixed-length integer representations
==========================================================

An (x,...,x) family gives every vertex d open intervals of integer
length x with integer endpoints.  On a bounded coordinate range the
question is finite, so a backtracking search can answer it exactly,
prune with a packing bound, and report why a branch died.
"""

from multiinterval.graphs import Graph
from multiinterval.intervals import intersection_graph, validate_representation
from multiinterval.intrep import SearchConfig, find_integer_rep, stretch


def build(name, n, edges):
    g = Graph()
    for i in range(n):
        g.add_vertex(f"v{i}")
    for a, b in edges:
        g.add_edge(f"v{a}", f"v{b}")
    return name, g


cases = [
    build("P4", 4, [(0, 1), (1, 2), (2, 3)]),
    build("K4", 4, [(a, b) for a in range(4) for b in range(a + 1, 4)]),
    build("bull", 5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]),
]

# With x=1, open integer intervals intersect only when they start at the
# same point, so only disjoint unions of cliques are feasible.  Larger x
# buys slack: at x=|V| every unit interval graph fits.
for name, g in cases:
    for x in (1, g.n):
        stats = {}
        fam = find_integer_rep(g, SearchConfig(d=1, x=x, coord_max=x * g.n),
                               stats)
        outcome = "feasible" if fam is not None else "infeasible"
        print(f"{name:5s} d=1 x={x}: {outcome:10s} "
              f"(nodes={stats['nodes']}, packing prune={stats['prune_packing']})")
        if fam is not None:
            assert validate_representation(g, fam).ok()
    print()

# A depth cap changes the answer: K4 needs all four unit intervals to
# share a point (Helly on the line), so depth 3 is impossible.
_, k4 = cases[1]
capped = find_integer_rep(k4, SearchConfig(d=1, x=1, coord_max=8, depth_cap=3))
print(f"K4 with depth_cap=3: {'feasible' if capped else 'infeasible'}")

# Stretching re-spaces a found family to length x+1 without touching a
# single intersection; iterating walks the whole (x,x) hierarchy upward.
_, p4 = cases[0]
fam = find_integer_rep(p4, SearchConfig(d=1, x=4, coord_max=16))
wider = stretch(fam)
assert intersection_graph(wider).edges() == intersection_graph(fam).edges()
lengths = {iv.length for _, _, iv in wider.all_intervals()}
print(f"stretched P4 family: lengths {sorted(lengths)}, same graph")
