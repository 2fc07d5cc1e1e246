"""Full verification battery.

Each test covers one numbered acceptance criterion and reports a single
pass/fail line through the terminal-summary hook in conftest, so the
verdicts stay visible even when an assertion stops a test midway.
"""

import itertools
import random
import time

from multiinterval.catalog import iter_catalog_graphs
from multiinterval.errors import BudgetExhausted
from multiinterval.fixtures import build_fixture
from multiinterval.graphs import (
    ColoredGraph,
    find_forbidden_unit_interval,
    verify_certificate,
)
from multiinterval.intervals import (
    classify,
    depth,
    intersection_graph,
    validate_representation,
)
from multiinterval.intrep import SearchConfig, find_integer_rep, stretch
from multiinterval.order_search import (
    colored_profile,
    enumerate_realizations,
    order_to_family,
    recognize_unit_d,
    uniform_profile,
)
from multiinterval.reduction import (
    CnfFormula,
    as_restricted,
    black_vertex_gadget,
    brute_force_sat,
    build_reduction_graph,
    decolorize,
    end_to_end_check,
    lift_to_d,
    preprocess_to_exactly3,
    restrict_sat,
)
from multiinterval.splits import (
    enumerate_splits,
    recognize_colored_unit2_via_splits,
)
from multiinterval.unit_interval import is_unit_interval, recognize_unit_interval


def dpll_sat(f: CnfFormula) -> bool:
    """Test-local complete SAT check (unit propagation plus splitting);
    used where exhaustive assignment enumeration would be too slow."""
    def solve(clauses, assign):
        while True:
            unit = None
            for cl in clauses:
                live = []
                satisfied = False
                for lit in cl:
                    val = assign.get(abs(lit))
                    if val is None:
                        live.append(lit)
                    elif (lit > 0) == val:
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not live:
                    return False
                if len(live) == 1:
                    unit = live[0]
                    break
            if unit is None:
                break
            assign[abs(unit)] = unit > 0
        for cl in clauses:
            if any(assign.get(abs(lit)) is not None
                   and (lit > 0) == assign[abs(lit)] for lit in cl):
                continue
            free = next((abs(lit) for lit in cl
                         if assign.get(abs(lit)) is None), None)
            if free is not None:
                for val in (True, False):
                    trial = dict(assign)
                    trial[free] = val
                    if solve(clauses, trial):
                        return True
                return False
        return True
    return solve(list(f.clauses), {})


def matchings(slots):
    if not slots:
        yield []
        return
    first = slots[0]
    for i in range(1, len(slots)):
        rest = slots[1:i] + slots[i + 1:]
        for m in matchings(rest):
            yield [(first, slots[i])] + m


def restricted_instances(k):
    """Every restricted formula with k all-positive 3-clauses over 3k
    variables, up to reordering the 2-clauses."""
    n = 3 * k
    three = [tuple(range(3 * i + 1, 3 * i + 4)) for i in range(k)]
    slots = [v for v in range(1, n + 1)] + [-v for v in range(1, n + 1)]
    seen = set()
    out = []
    for m in matchings(slots):
        if any(abs(a) == abs(b) for a, b in m):
            continue
        two = tuple(sorted(tuple(sorted(p)) for p in m))
        if two not in seen:
            seen.add(two)
            out.append(CnfFormula(n, list(three) + [list(p) for p in two]))
    return out


def random_exactly3(rng, max_vars):
    n = rng.randint(3, max_vars)
    m = rng.randint(1, 2 * n)
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), 3)
        clauses.append(tuple(v * rng.choice((1, -1)) for v in vs))
    return CnfFormula(n, clauses)


def random_restricted(rng, k):
    """A random restricted formula with k 3-clauses: variables partition
    into all-positive triples, then the leftover positive and the
    negative occurrence slots pair up into 2-clauses."""
    n = 3 * k
    order = list(range(1, n + 1))
    rng.shuffle(order)
    three = [tuple(sorted(order[3 * i:3 * i + 3])) for i in range(k)]
    while True:
        slots = [v for v in range(1, n + 1)] + [-v for v in range(1, n + 1)]
        rng.shuffle(slots)
        pairs = [(slots[2 * i], slots[2 * i + 1]) for i in range(n)]
        if all(abs(a) != abs(b) for a, b in pairs):
            break
    f = CnfFormula(n, list(three) + [list(p) for p in pairs])
    r = as_restricted(f)
    assert r is not None
    return r


def test_01_forbidden_subgraph_equivalence(acceptance):
    """Certificate absence and recognition success coincide on every
    graph with at most 9 vertices."""
    t0 = time.monotonic()
    total = unit = mismatches = 0
    for n in range(1, 10):
        for g in iter_catalog_graphs(n):
            total += 1
            cert = find_forbidden_unit_interval(g)
            recognized = is_unit_interval(g)
            if (cert is None) != recognized:
                mismatches += 1
            if recognized:
                unit += 1
            if cert is not None and not verify_certificate(g, cert):
                mismatches += 1
            if n <= 7:
                # the constructive path agrees with the boolean one
                out = recognize_unit_interval(g)
                if isinstance(out, tuple) != recognized:
                    mismatches += 1
    elapsed = time.monotonic() - t0
    ok = mismatches == 0 and total == 288266 and elapsed <= 600
    acceptance(1, ok, f"{total} graphs with <= 9 vertices, {unit} unit "
                      f"interval, {mismatches} mismatches, {elapsed:.0f}s")
    assert mismatches == 0
    assert total == 288266
    assert elapsed <= 600


def test_02_oracle_cross_validation(acceptance):
    """Both recognition routes give the same yes/no on every small graph
    under the all-white coloring and 200 seeded random colorings."""
    t0 = time.monotonic()
    instances = disagreements = positives = 0
    gi = 0
    for n in range(1, 7):
        for g in iter_catalog_graphs(n):
            gi += 1
            rng = random.Random(1000 + gi)
            colorings = {tuple("white" for _ in g.vertices)}
            for _ in range(200):
                colorings.add(tuple(rng.choice(("white", "black"))
                                    for _ in g.vertices))
            for colors in sorted(colorings):
                cg = ColoredGraph(g, dict(zip(g.vertices, colors)))
                instances += 1
                by_order = recognize_unit_d(g, colored_profile(cg)) is not None
                by_splits = recognize_colored_unit2_via_splits(cg) is not None
                if by_order != by_splits:
                    disagreements += 1
                elif by_order:
                    positives += 1
    elapsed = time.monotonic() - t0
    ok = disagreements == 0 and elapsed <= 1800
    acceptance(2, ok, f"{instances} colored instances over 208 graphs, "
                      f"{positives} positive, {disagreements} disagreements, "
                      f"{elapsed:.0f}s")
    assert disagreements == 0
    assert instances == 10870
    assert elapsed <= 1800


def test_03_positive_answers_validate(acceptance):
    """Every family either oracle produces is a colored-unit
    representation with zero report entries."""
    t0 = time.monotonic()
    checked = violations = 0
    for n in range(1, 6):
        for g in iter_catalog_graphs(n):
            for bits in itertools.product(("white", "black"), repeat=n):
                cg = ColoredGraph(g, dict(zip(g.vertices, bits)))
                fam = recognize_unit_d(g, colored_profile(cg))
                if fam is not None:
                    checked += 1
                    if not validate_representation(
                            g, fam, {"unit": True}, colored=cg).ok():
                        violations += 1
                out = recognize_colored_unit2_via_splits(cg)
                if out is not None:
                    checked += 1
                    if not validate_representation(
                            g, out[1], {"unit": True}, colored=cg).ok():
                        violations += 1
                if (fam is None) != (out is None):
                    violations += 1
    elapsed = time.monotonic() - t0
    acceptance(3, violations == 0,
               f"{checked} positive families across the exhaustive "
               f"coloring sweep, {violations} violations, {elapsed:.0f}s")
    assert violations == 0


def test_04_black_gadget_containment(acceptance):
    """In every realization of the 9-vertex gadget, some interval of the
    hub sits strictly inside the union of one interval from each of its
    two anchor vertices."""
    t0 = time.monotonic()
    g = black_vertex_gadget("v")

    def properly_in_union(iv, a, b):
        lo = min(a.left, b.left)
        hi = max(a.right, b.right)
        joined = max(a.left, b.left) <= min(a.right, b.right)
        if not (joined and lo <= iv.left and iv.right <= hi):
            return False
        return lo < iv.left or iv.right < hi

    holds = []

    def check(t):
        fam = order_to_family(t)
        hub = fam.intervals_of("v")
        anchors_a = fam.intervals_of("av_0")
        anchors_b = fam.intervals_of("bv_0")
        holds.append(any(properly_in_union(iv, a, b)
                         for iv in hub for a in anchors_a
                         for b in anchors_b))
        return True

    visits = enumerate_realizations(g, uniform_profile(g, 2), check)
    elapsed = time.monotonic() - t0
    ok = visits >= 1 and all(holds) and elapsed <= 600
    acceptance(4, ok, f"{visits} realizations of the black-vertex gadget, "
                      f"containment holds in {sum(holds)}, {elapsed:.0f}s")
    assert visits == 36
    assert all(holds)
    assert elapsed <= 600


def test_05_variable_gadget_dichotomy(acceptance):
    """Unit splits of the stubbed variable gadget fall into exactly one
    of two patterns: both positive literal vertices keep an isolated
    representative, or the negated one does."""
    t0 = time.monotonic()
    base = build_fixture("variable-gadget")
    g = base.graph.copy()
    gamma = dict(base.gamma)
    for stub, lit in (("s1", "xi_1"), ("s2", "xi_2"), ("sN", "xi_N")):
        g.add_vertex(stub)
        g.add_edge(stub, lit)
        gamma[stub] = "white"
    cg = ColoredGraph(g, gamma)

    private = ("Ai", "Bi", "Ci")

    def has_isolated_rep(sp, vertex):
        for r in sp.preimage(vertex):
            if not any(sp.s.has_edge(r, sp.preimage(b)[0]) for b in private):
                return True
        return False

    tallies = {"case1": 0, "case2": 0, "both": 0, "neither": 0}

    def classify_split(sp):
        one = has_isolated_rep(sp, "xi_1") and has_isolated_rep(sp, "xi_2")
        two = has_isolated_rep(sp, "xi_N")
        if one and two:
            tallies["both"] += 1
        elif one:
            tallies["case1"] += 1
        elif two:
            tallies["case2"] += 1
        else:
            tallies["neither"] += 1
        return True

    visits = enumerate_splits(cg, classify_split, unit_only=True)
    elapsed = time.monotonic() - t0
    ok = (visits >= 1 and tallies["both"] == 0 and tallies["neither"] == 0
          and visits == tallies["case1"] + tallies["case2"])
    acceptance(5, ok, f"{visits} unit splits: {tallies['case1']} with both "
                      f"positive literals isolated, {tallies['case2']} with "
                      f"the negated literal isolated, {tallies['both']} both, "
                      f"{tallies['neither']} neither, {elapsed:.1f}s")
    assert visits == 38
    assert tallies == {"case1": 30, "case2": 8, "both": 0, "neither": 0}


def test_06_reduction_soundness(acceptance):
    """Satisfiability survives the rewrite to restricted form, and the
    whole-pipeline comparison agrees on the tiny restricted space."""
    t0 = time.monotonic()

    # (a) equisatisfiability, exhaustive then random
    mismatches = 0
    exhaustive = 0
    sign_patterns = list(itertools.product((1, -1), repeat=3))
    clause_pool = [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                   for signs in sign_patterns]
    for k in range(0, 9):
        for sub in itertools.combinations(clause_pool, k):
            f = CnfFormula(3, sub)
            exhaustive += 1
            lhs = brute_force_sat(f) is not None
            rhs = dpll_sat(restrict_sat(preprocess_to_exactly3(f)).formula)
            if lhs != rhs:
                mismatches += 1
    rng = random.Random(6)
    for _ in range(500):
        f = random_exactly3(rng, 6)
        lhs = brute_force_sat(f) is not None
        rhs = dpll_sat(restrict_sat(preprocess_to_exactly3(f)).formula)
        if lhs != rhs:
            mismatches += 1

    # (b) end-to-end agreement: the committed block fixture, the full
    # one-3-clause space, and every unsatisfiable two-3-clause instance
    e2e_runs = e2e_disagree = 0
    skips = 0

    def run_e2e(f):
        nonlocal e2e_runs, e2e_disagree, skips
        rep = end_to_end_check(f, budget_ms=120_000)
        e2e_runs += 1
        if rep.agree is not True:
            e2e_disagree += 1
        if not rep.complete:
            skips += 1

    run_e2e(build_fixture("padding-block-cnf"))
    small = restricted_instances(1)
    unsat_small = [f for f in small if brute_force_sat(f) is None]
    for f in small:
        run_e2e(f)
    unsat_bigger = [f for f in restricted_instances(2)
                    if brute_force_sat(f) is None]
    for f in unsat_bigger:
        run_e2e(f)

    elapsed = time.monotonic() - t0
    ok = mismatches == 0 and e2e_disagree == 0
    acceptance(6, ok, f"{exhaustive} exhaustive + 500 random formulas, "
                      f"{mismatches} equisat mismatches; end-to-end on "
                      f"{e2e_runs} instances ({len(unsat_small)} + "
                      f"{len(unsat_bigger)} unsatisfiable), "
                      f"{e2e_disagree} disagreements, {skips} with "
                      f"capacity-skipped recognition, {elapsed:.0f}s")
    assert exhaustive == 256
    assert mismatches == 0
    assert len(unsat_small) == 0
    assert len(unsat_bigger) == 120
    assert e2e_disagree == 0


def test_07_size_and_degree_accounting(acceptance):
    """Graph sizes stay within the published linear bounds, with the
    exact per-feature counts, on 1000 random restricted instances."""
    t0 = time.monotonic()
    rng = random.Random(7)
    failures = 0
    for _ in range(1000):
        r = random_restricted(rng, rng.randint(1, 4))
        f = r.formula
        n = f.num_vars
        m2 = sum(1 for cl in f.clauses if len(cl) == 2)
        m3 = len(f.clauses) - m2
        m = len(f.clauses)
        cg = build_reduction_graph(r).colored_graph
        g = cg.graph
        exact = (g.n == 6 * n + 2 * m2
                 and g.edge_count() == 12 * n + 3 * m3 + 4 * m2)
        bounded = (g.n <= 6 * n + 2 * m
                   and g.edge_count() <= 12 * n + 4 * m
                   and g.max_degree() <= 6)
        nw = len(cg.white_vertices())
        nb = len(cg.black_vertices())
        flat = decolorize(cg).graph
        after = (flat.n == nw + 9 * nb
                 and flat.edge_count() == g.edge_count() + 9 * nb
                 and flat.max_degree() <= 7)
        if not (exact and bounded and after):
            failures += 1
    elapsed = time.monotonic() - t0
    acceptance(7, failures == 0,
               f"1000 random restricted instances, {failures} outside the "
               f"size/degree accounting, {elapsed:.0f}s")
    assert failures == 0


def test_08_committed_fixtures(acceptance):
    """The committed representations validate, the two depth anchors are
    exact, and the grid search reproduces the open length-11 block."""
    t0 = time.monotonic()
    problems = []

    gadget = build_fixture("variable-gadget")
    for name in ("fig4a-rep", "fig4b-rep"):
        fam = build_fixture(name)
        if not validate_representation(gadget.graph, fam, {"unit": True},
                                       colored=gadget).ok():
            problems.append(name)

    fam6 = build_fixture("fig6-rep")
    if not validate_representation(
            build_fixture("black-gadget"), fam6,
            {"unit": True,
             "counts": {v: 2 for v in build_fixture("black-gadget").vertices}}
            ).ok():
        problems.append("fig6-rep")

    fam8 = build_fixture("fig8-rep")
    if not validate_representation(build_fixture("fig8-block").graph, fam8,
                                   {"closed": True}).ok():
        problems.append("fig8-rep")

    fam9 = build_fixture("fig9-rep")
    if not validate_representation(build_fixture("fig9-block").graph, fam9,
                                   {"open": True, "integer_x": 11}).ok():
        problems.append("fig9-rep")

    depths_ok = depth(fam6) == 3 and depth(fam8) == 4

    stats = {}
    found = find_integer_rep(build_fixture("fig9-block").graph,
                             SearchConfig(2, 11, 120), stats)
    elapsed = time.monotonic() - t0
    ok = not problems and depths_ok and found is not None
    acceptance(8, ok,
               f"fixtures {'validate' if not problems else problems}, depth "
               f"anchors {'exact' if depths_ok else 'WRONG'}; uniform-2 grid "
               f"search on fig9-block found "
               f"{'a family' if found else 'no family'} "
               f"(9 pairwise nonadjacent vertices need 18 disjoint open "
               f"length-11 intervals, span 198 > 120), {elapsed:.1f}s")
    assert not problems
    assert depths_ok
    assert found is not None, (
        "no uniform-2 length-11 family fits in [0, 120]: an independent "
        "set of 9 vertices forces 18 pairwise-disjoint open intervals")


def test_09_hierarchy(acceptance):
    """Lengthening every found equal-length family by one unit keeps its
    graph; shrinking the length-11 block to unit scale keeps its graph."""
    t0 = time.monotonic()
    stretched = stretch_failures = 0

    def run_sweep(graphs, d, x_of):
        nonlocal stretched, stretch_failures
        for g in graphs:
            x = x_of(g)
            fam = find_integer_rep(g, SearchConfig(d, x, d * x * (g.n + 1)))
            if fam is None:
                continue
            grown = stretch(fam)
            stretched += 1
            if not validate_representation(
                    g, grown, {"open": True, "integer_x": x + 1,
                               "counts": {v: d for v in g.vertices}}).ok():
                stretch_failures += 1

    small = [g for n in range(1, 6) for g in iter_catalog_graphs(n)]
    run_sweep(small, 1, lambda g: g.n)
    run_sweep([g for g in small if g.n <= 4], 2, lambda g: 2)

    fam9 = build_fixture("fig9-rep")
    shrunk = fam9.scaled("1/11")
    rep = classify(shrunk)
    block = build_fixture("fig9-block").graph
    scale_ok = (rep.is_unit
                and validate_representation(block, shrunk).ok()
                and intersection_graph(shrunk).edge_count()
                == block.edge_count())

    elapsed = time.monotonic() - t0
    ok = stretch_failures == 0 and stretched > 0 and scale_ok
    acceptance(9, ok, f"{stretched} families stretched with graphs intact, "
                      f"{stretch_failures} failures; 1/11 scaling of the "
                      f"length-11 block is {'unit' if scale_ok else 'BROKEN'}"
                      f", {elapsed:.0f}s")
    assert stretch_failures == 0
    assert stretched > 0
    assert scale_ok


def test_10_lift_round_trip(acceptance):
    """Raising d from 2 to 3 through the leaf-gadget rewrite preserves
    the recognition answer wherever the search finishes; exhausted
    budgets are reported, not failed."""
    t0 = time.monotonic()
    pairs = completed = disagreements = exhausted = 0
    for n in range(1, 6):
        for g in iter_catalog_graphs(n):
            pairs += 1
            left = recognize_unit_d(g, uniform_profile(g, 2)) is not None
            lifted = lift_to_d(g, 3).graph
            try:
                right = recognize_unit_d(
                    lifted, uniform_profile(lifted, 3),
                    token_cap=3 * lifted.n, budget_ms=700) is not None
            except BudgetExhausted:
                exhausted += 1
                continue
            completed += 1
            if left != right:
                disagreements += 1
    elapsed = time.monotonic() - t0
    ok = disagreements == 0 and pairs == 52
    acceptance(10, ok,
               f"{pairs} lift pairs: {completed} completed with "
               f"{disagreements} disagreements, {exhausted} budget "
               f"exhaustions reported (700ms each), {elapsed:.0f}s")
    assert pairs == 52
    assert disagreements == 0
