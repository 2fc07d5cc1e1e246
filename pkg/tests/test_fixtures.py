import json

import pytest

from multiinterval.fixtures import (
    FIXTURE_NAMES,
    build_fixture,
    fixture_dir,
    fixture_json_dict,
    fixture_kind,
    load_fixture,
    write_fixture_files,
)
from multiinterval.graphs import ColoredGraph
from multiinterval.intervals import (
    VariableCountFamily,
    classify,
    depth,
    intersection_graph,
    validate_representation,
)
from multiinterval.reduction import CnfFormula, brute_force_sat


def test_name_inventory():
    assert FIXTURE_NAMES == (
        "variable-gadget", "three-clause", "two-clause", "black-gadget",
        "fig4a-rep", "fig4b-rep", "fig6-rep", "fig8-block", "fig8-rep",
        "fig9-block", "fig9-rep", "padding-block-cnf")


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_committed_files_match_builders(name):
    path = fixture_dir() / f"{name}.json"
    assert path.exists(), path
    on_disk = json.loads(path.read_text())
    assert on_disk == fixture_json_dict(name)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_load_round_trip(name):
    built = build_fixture(name)
    loaded = load_fixture(name)
    assert type(loaded) is type(built)


def test_kinds():
    assert fixture_kind("variable-gadget") == "colored_graph"
    assert fixture_kind("fig6-rep") == "family"
    assert fixture_kind("black-gadget") == "graph"
    assert fixture_kind("padding-block-cnf") == "cnf"
    with pytest.raises(Exception):
        fixture_kind("no-such-fixture")


def test_write_files_deterministic(tmp_path):
    paths = write_fixture_files(tmp_path)
    assert len(paths) == len(FIXTURE_NAMES)
    for p in paths:
        committed = fixture_dir() / p.name
        assert p.read_text() == committed.read_text()


def test_variable_gadget_shape():
    cg = build_fixture("variable-gadget")
    assert cg.graph.n == 6
    assert len(cg.white_vertices()) == 3
    assert len(cg.black_vertices()) == 3
    assert cg.graph.edge_count() == 12


@pytest.mark.parametrize("name", ["fig4a-rep", "fig4b-rep"])
def test_variable_gadget_representations(name):
    cg = build_fixture("variable-gadget")
    fam = build_fixture(name)
    assert isinstance(fam, VariableCountFamily)
    report = validate_representation(cg.graph, fam, {"unit": True},
                                     colored=cg)
    assert report.ok(), report.to_json_dict()


def test_fig6_rep_covers_black_gadget():
    g = build_fixture("black-gadget")
    fam = build_fixture("fig6-rep")
    report = validate_representation(
        g, fam, {"unit": True, "counts": {v: 2 for v in g.vertices}})
    assert report.ok(), report.to_json_dict()
    assert depth(fam) == 3


def test_fig8_rep_is_closed_depth_four():
    cg = build_fixture("fig8-block")
    fam = build_fixture("fig8-rep")
    # the drawing realizes every adjacency with a thrifty subfamily, so
    # interval counts are not the full colored profile
    report = validate_representation(cg.graph, fam, {"closed": True})
    assert report.ok(), report.to_json_dict()
    assert depth(fam) == 4
    assert not classify(fam).is_unit


def test_fig9_rep_is_open_length_eleven():
    cg = build_fixture("fig9-block")
    fam = build_fixture("fig9-rep")
    report = validate_representation(cg.graph, fam,
                                     {"open": True, "integer_x": 11})
    assert report.ok(), report.to_json_dict()


def test_fig9_blocks_share_vertex_inventory():
    cg = build_fixture("fig9-block")
    fam = build_fixture("fig9-rep")
    assert set(cg.graph.vertices) == set(fam.assignment)
    assert intersection_graph(fam).edge_count() == cg.graph.edge_count()


def test_two_clause_shape():
    cg = build_fixture("two-clause")
    assert isinstance(cg, ColoredGraph)
    # two variable gadgets plus the L/p pair
    assert cg.graph.n == 14
    assert {"L", "p"} <= set(
        v[0] for v in cg.graph.vertices if v[0] in "Lp")


def test_padding_block_cnf():
    f = build_fixture("padding-block-cnf")
    assert isinstance(f, CnfFormula)
    assert brute_force_sat(f) is not None
    widths = sorted(len(cl) for cl in f.clauses)
    assert widths == [2, 2, 2, 3]
