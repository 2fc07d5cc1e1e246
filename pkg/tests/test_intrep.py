import pytest

from multiinterval.errors import CapacityError, InputError
from multiinterval.fixtures import build_fixture
from multiinterval.intervals import (
    OPEN,
    classify,
    depth,
    intersection_graph,
    validate_representation,
)
from multiinterval.intrep import (
    SearchConfig,
    find_depth_bounded_unit,
    find_integer_rep,
    stretch,
)
from multiinterval.unit_interval import is_unit_interval

from conftest import make_graph


def path(k):
    vs = [f"v{i}" for i in range(k)]
    return make_graph(vs, [(vs[i], vs[i + 1]) for i in range(k - 1)])


def complete(k):
    vs = [f"v{i}" for i in range(k)]
    return make_graph(vs, [(u, w) for i, u in enumerate(vs)
                           for w in vs[i + 1:]])


def bull():
    return make_graph("abcxy", [("a", "b"), ("b", "c"), ("a", "c"),
                                ("a", "x"), ("b", "y")])


def same_omega(a, b):
    """Graph equality up to vertex order."""
    return (set(a.vertices) == set(b.vertices)
            and {frozenset(e) for e in a.edges()}
            == {frozenset(e) for e in b.edges()})


def components_all_cliques(g):
    seen = set()
    for start in g.vertices:
        if start in seen:
            continue
        comp, todo = {start}, [start]
        while todo:
            u = todo.pop()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    todo.append(w)
        seen |= comp
        comp = list(comp)
        for i, u in enumerate(comp):
            for w in comp[i + 1:]:
                if not g.has_edge(u, w):
                    return False
    return True


class TestConfig:
    def test_validation(self):
        with pytest.raises(InputError):
            SearchConfig(0, 1, 5)
        with pytest.raises(InputError):
            SearchConfig(1, 4, 3)  # grid shorter than one interval
        with pytest.raises(InputError):
            SearchConfig(1, 1, 5, depth_cap=0)

    def test_grid_capacity(self):
        with pytest.raises(CapacityError):
            find_integer_rep(path(10), SearchConfig(2, 3, 400))


class TestSearch:
    @pytest.mark.parametrize("build,d,x", [
        (lambda: path(4), 1, 3),
        (lambda: complete(4), 1, 4),
        (bull, 1, 5),
        (lambda: path(4), 2, 2),
    ])
    def test_found_families_validate(self, build, d, x):
        g = build()
        stats = {}
        fam = find_integer_rep(g, SearchConfig(d, x, 6 * x), stats)
        assert fam is not None
        assert stats["solutions"] == 1
        assert stats["nodes"] > 0
        report = validate_representation(
            g, fam, {"open": True, "integer_x": x,
                     "counts": {v: d for v in g.vertices}})
        assert report.ok(), report.to_json_dict()

    def test_empty_graph(self):
        fam = find_integer_rep(make_graph(""), SearchConfig(2, 3, 10))
        assert fam is not None
        assert fam.assignment == {}

    def test_infeasible_grid_returns_none(self):
        # three mutually far vertices cannot pack into a short grid
        g = make_graph("abc")
        assert find_integer_rep(g, SearchConfig(1, 2, 4)) is None

    def test_packing_prepass_settles_fig9_block(self):
        cg = build_fixture("fig9-block")
        stats = {}
        fam = find_integer_rep(cg.graph, SearchConfig(2, 11, 120), stats)
        assert fam is None
        assert stats["prune_packing"] == 1
        assert stats["nodes"] == 0

    def test_packing_prepass_silent_on_cliques(self):
        stats = {}
        fam = find_integer_rep(complete(3), SearchConfig(1, 2, 6), stats)
        assert fam is not None
        assert stats["prune_packing"] == 0

    def test_length_one_characterizes_cluster_graphs(self, catalog5):
        """Open integer unit intervals intersect only when identical, so
        exactly the disjoint unions of cliques are representable."""
        for g in catalog5:
            got = find_integer_rep(g, SearchConfig(1, 1, 2 * g.n)) is not None
            assert got == components_all_cliques(g), g

    def test_generous_length_matches_unit_recognition(self, catalog5):
        for g in catalog5:
            n = g.n
            got = find_integer_rep(g, SearchConfig(1, n, n * n)) is not None
            assert got == is_unit_interval(g), g


class TestStretch:
    def test_needs_open_integer_family(self):
        from multiinterval.intervals import CLOSED, DIntervalFamily, Interval
        closed = DIntervalFamily(1, CLOSED, {"a": [Interval(0, 1)]})
        with pytest.raises(InputError):
            stretch(closed)
        ragged = DIntervalFamily(1, OPEN, {"a": [Interval("1/2", "3/2")]})
        with pytest.raises(InputError):
            stretch(ragged)

    @pytest.mark.parametrize("build,d,x", [
        (lambda: path(4), 1, 2),
        (bull, 1, 4),
        (lambda: complete(4), 2, 3),
    ])
    def test_grows_length_preserves_graph(self, build, d, x):
        g = build()
        fam = find_integer_rep(g, SearchConfig(d, x, 8 * x))
        assert fam is not None
        grown = stretch(fam)
        rep = classify(grown)
        assert rep.integer_x == x + 1
        assert same_omega(intersection_graph(grown), g)
        assert same_omega(intersection_graph(grown), intersection_graph(fam))

    def test_iterated(self):
        g = path(3)
        fam = find_integer_rep(g, SearchConfig(1, 2, 10))
        for want in (3, 4, 5):
            fam = stretch(fam)
            assert classify(fam).integer_x == want
        assert same_omega(intersection_graph(fam), g)


class TestDepthBounded:
    def test_clique_needs_full_depth(self):
        k4 = complete(4)
        assert find_depth_bounded_unit(k4, 1, 3) is None
        fam = find_depth_bounded_unit(k4, 1, 4)
        assert fam is not None
        assert depth(fam) <= 4

    def test_depth_capped_integer_search(self):
        k4 = complete(4)
        # pairwise-intersecting intervals on a line share a point, so a
        # K4 forces depth 4 whatever the lengths
        assert find_integer_rep(k4, SearchConfig(1, 4, 20, depth_cap=3)) is None
        fam = find_integer_rep(k4, SearchConfig(1, 4, 20, depth_cap=4))
        assert fam is not None
        assert depth(fam) <= 4

    def test_bad_bound(self):
        with pytest.raises(InputError):
            find_depth_bounded_unit(path(2), 1, 0)
