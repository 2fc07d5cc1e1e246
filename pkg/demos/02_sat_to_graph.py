"""
From a CNF formula to a colored graph and back to a yes/no
==========================================================

The hardness pipeline: bring a formula into a rigid "restricted" shape
(clauses of width 2 or 3, all-positive 3-clauses, every variable in
exactly one 3-clause and three clauses overall), then compile it into a
graph whose colored unit 2-interval representability encodes
satisfiability.  At desk scale we can close the loop with brute force.
"""

import json

from multiinterval.fixtures import build_fixture
from multiinterval.reduction import (
    brute_force_sat,
    build_reduction_graph,
    end_to_end_check,
    parse_dimacs,
    preprocess_to_exactly3,
    restrict_sat,
)

dimacs = """\
c four clauses over three variables, every variable used four times
p cnf 3 4
1 2 3 0
-1 -2 3 0
1 -2 -3 0
-1 2 -3 0
"""

f = parse_dimacs(dimacs)
print(f"parsed: {f.num_vars} vars, {len(f.clauses)} clauses")
print(f"satisfiable (brute force): {brute_force_sat(f) is not None}")

restricted = restrict_sat(preprocess_to_exactly3(f))
rf = restricted.formula
print(f"restricted: {rf.num_vars} vars, {len(rf.clauses)} clauses")
print(f"  still satisfiable: {brute_force_sat(rf) is not None}")

trace = build_reduction_graph(restricted)
print(f"graph: {trace.size_stats['vertices']} vertices, "
      f"{trace.size_stats['edges']} edges, "
      f"max degree {trace.size_stats['max_degree']}")

# The committed padding-block formula is small enough that recognition
# itself fits in the oracle capacity, so the whole chain can be compared
# against brute-force SAT in one call.
print()
pb = build_fixture("padding-block-cnf")
report = end_to_end_check(pb, budget_ms=120000)
print("padding-block fixture, end to end:")
print(json.dumps(report.to_json_dict(include_timings=False), indent=2,
                 sort_keys=True))
assert report.agree is True
