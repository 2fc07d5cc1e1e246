"""
The gadget zoo: committed graphs and their representations
==========================================================

The reduction is built from a handful of small gadgets.  Each ships as
a committed JSON fixture together with a hand-transcribed interval
representation, so the geometry behind the construction can be
replayed mechanically: validate, measure depth, rescale.
"""

from multiinterval.fixtures import FIXTURE_NAMES, load_fixture
from multiinterval.intervals import depth, validate_representation
from multiinterval.graphs import ColoredGraph

print("fixtures:", ", ".join(FIXTURE_NAMES))
print()

# The variable gadget carries two interval layouts: one encodes "true"
# (fig4a), the other "false" (fig4b).  Both must represent the same
# colored graph with unit intervals.
gadget = load_fixture("variable-gadget")
for name in ("fig4a-rep", "fig4b-rep"):
    fam = load_fixture(name)
    report = validate_representation(gadget.graph, fam,
                                     required={"unit": True, "closed": True},
                                     colored=gadget)
    print(f"{name} vs variable-gadget: ok={report.ok()}")

# The black-vertex attachment pins one interval of its host; its
# representation needs depth exactly 3.
bv = load_fixture("black-gadget")
fam6 = load_fixture("fig6-rep")
report = validate_representation(bv, fam6, required={"unit": True})
print(f"fig6-rep vs black-gadget:  ok={report.ok()}, depth={depth(fam6)}")

# The composed three-gadget block appears twice: once with a closed
# depth-4 representation, once with an open integer length-11 one.  Both
# transcriptions draw an economical subfamily (five white vertices need
# only one of their two intervals to realize every edge), so they are
# validated structurally rather than against full per-color counts.
blk8 = load_fixture("fig8-block")
fam8 = load_fixture("fig8-rep")
report = validate_representation(blk8.graph, fam8,
                                 required={"closed": True})
print(f"fig8-rep vs fig8-block:    ok={report.ok()}, depth={depth(fam8)}")

blk9 = load_fixture("fig9-block")
fam9 = load_fixture("fig9-rep")
report = validate_representation(blk9.graph, fam9,
                                 required={"integer_x": 11, "open": True})
print(f"fig9-rep vs fig9-block:    ok={report.ok()} (open, all lengths 11)")

# Scaling an integer length-11 family by 1/11 gives unit intervals and
# cannot change any intersection, so the same graph validates again.
scaled = fam9.scaled("1/11")
report = validate_representation(blk9.graph, scaled,
                                 required={"unit": True, "open": True})
print(f"fig9-rep scaled by 1/11:   ok={report.ok()} (now unit)")
