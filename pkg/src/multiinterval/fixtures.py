"""Named gadget and representation fixtures.

The graphs are the building blocks of the hardness construction (the
6-vertex variable gadget, the 3-clause triangle composition, the
2-clause L/p attachment, the 9-vertex hub gadget) plus two 19-vertex
"contiguous block" excerpts: the colored subgraph spanned by two merged
variable gadgets, the middle literal of their shared 3-clause, and one
2-clause attachment on each side.

The representation fixtures are interval families transcribed from
drawings, with rational endpoints chosen to reproduce every overlap and
every gap exactly under the stated convention.  They are committed as
JSON under data/fixtures/; the builders here are the authoritative
source and regenerate the files via write_fixture_files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .graphs import (BLACK, WHITE, ColoredGraph, Graph,
                     colored_graph_to_json_dict, graph_from_json_dict,
                     graph_to_json_dict)
from .intervals import (CLOSED, DIntervalFamily, Interval, OPEN,
                        VariableCountFamily, family_from_json_dict,
                        family_to_json_dict)
from .reduction import CnfFormula, black_vertex_gadget, cnf_from_json_dict


def _variable_gadget(tag: str, g: Graph, gamma: dict[str, str]) -> None:
    whites = [f"x{tag}_1", f"x{tag}_2", f"x{tag}_N"]
    blacks = [f"A{tag}", f"B{tag}", f"C{tag}"]
    for v in whites:
        g.add_vertex(v)
        gamma[v] = WHITE
    for v in blacks:
        g.add_vertex(v)
        gamma[v] = BLACK
    for w in whites:
        for b in blacks:
            g.add_edge(w, b)
    g.add_edge(whites[0], whites[1])
    g.add_edge(blacks[2], blacks[0])
    g.add_edge(blacks[2], blacks[1])


def variable_gadget_fixture() -> ColoredGraph:
    g = Graph()
    gamma: dict[str, str] = {}
    _variable_gadget("i", g, gamma)
    return ColoredGraph(g, gamma)


def three_clause_fixture() -> ColoredGraph:
    """Three variable gadgets joined by the triangle of a 3-clause."""
    g = Graph()
    gamma: dict[str, str] = {}
    for tag in ("i", "j", "k"):
        _variable_gadget(tag, g, gamma)
    g.add_edge("xi_1", "xj_1")
    g.add_edge("xj_1", "xk_1")
    g.add_edge("xk_1", "xi_1")
    return ColoredGraph(g, gamma)


def two_clause_fixture() -> ColoredGraph:
    """Two variable gadgets joined by a 2-clause (x_i or not x_j): the
    literal vertices, a shared black L, and L's private black p."""
    g = Graph()
    gamma: dict[str, str] = {}
    for tag in ("i", "j"):
        _variable_gadget(tag, g, gamma)
    for v in ("Lij", "pij"):
        g.add_vertex(v)
        gamma[v] = BLACK
    g.add_edge("xi_2", "xj_N")
    g.add_edge("xi_2", "Lij")
    g.add_edge("xj_N", "Lij")
    g.add_edge("Lij", "pij")
    return ColoredGraph(g, gamma)


def _iv(left, right) -> Interval:
    return Interval(Fraction(left), Fraction(right))


def _unit(left) -> Interval:
    lo = Fraction(left)
    return Interval(lo, lo + 1)


def fig4a_rep_fixture() -> VariableCountFamily:
    """Variable gadget representation with x_i^N split around the
    blacks; the second intervals of x_i^1 and x_i^2 stay free (placed
    far right)."""
    t = Fraction(1, 10)
    return VariableCountFamily(CLOSED, {
        "Ci": [_unit(1 * t)],
        "Ai": [_unit(-1 * t)],
        "Bi": [_unit(1)],
        "xi_N": [_unit(-7 * t), _unit(17 * t)],
        "xi_1": [_unit(5 * t), _unit(4)],
        "xi_2": [_unit(5 * t), _unit(6)],
    })


def fig4b_rep_fixture() -> VariableCountFamily:
    """Variable gadget representation with x_i^1 and x_i^2 split and a
    single placed interval for x_i^N (its second stays free)."""
    t = Fraction(1, 10)
    return VariableCountFamily(CLOSED, {
        "Ci": [_unit(1 * t)],
        "Ai": [_unit(-1 * t)],
        "Bi": [_unit(1)],
        # right copy starts at 1.65, not 1.6: its left end must clear
        # the right end of x_i^N under the closed convention
        "xi_1": [_unit(-7 * t), _unit(Fraction(33, 20))],
        "xi_2": [_unit(-6 * t), _unit(17 * t)],
        "xi_N": [_unit(6 * t), _unit(4)],
    })


def fig6_rep_fixture() -> DIntervalFamily:
    """Unit 2-interval representation of the 9-vertex hub gadget, depth
    3: one interval of v is buried between the first intervals of the
    hubs, the other is free.  Seven unused second intervals sit far
    right."""
    f = Fraction(1, 5)
    return DIntervalFamily(2, CLOSED, {
        "av_1": [_unit(0), _unit(12)],
        "av_0": [_unit(4 * f), _unit(22 * f)],
        "v": [_unit(6 * f), _unit(10)],
        "bv_0": [_unit(8 * f), _unit(7)],
        "bv_1": [_unit(12 * f), _unit(18)],
        "av_2": [_unit(19 * f), _unit(14)],
        "av_3": [_unit(5), _unit(16)],
        "bv_2": [_unit(32 * f), _unit(20)],
        "bv_3": [_unit(38 * f), _unit(22)],
    })


def _block_graph(triangle_on: str, left_pair: tuple[str, str],
                 right_pair: tuple[str, str]) -> ColoredGraph:
    g = Graph()
    gamma: dict[str, str] = {}
    for tag in ("i", "k"):
        _variable_gadget(tag, g, gamma)
    mid = f"xj_{triangle_on}"
    g.add_vertex(mid)
    gamma[mid] = WHITE
    a, b = f"xi_{triangle_on}", f"xk_{triangle_on}"
    g.add_edge(a, mid)
    g.add_edge(mid, b)
    g.add_edge(a, b)
    for partner, target, lv, pv in (
            (left_pair[0], left_pair[1], "Lmi", "pmi"),
            (right_pair[0], right_pair[1], "Llk", "plk")):
        g.add_vertex(partner)
        gamma[partner] = WHITE
        for v in (lv, pv):
            g.add_vertex(v)
            gamma[v] = BLACK
        g.add_edge(partner, target)
        g.add_edge(partner, lv)
        g.add_edge(target, lv)
        g.add_edge(lv, pv)
    return ColoredGraph(g, gamma)


def fig8_block_fixture() -> ColoredGraph:
    """Contiguous block with the 3-clause triangle on the x^1 vertices
    and the 2-clause attachments on x_i^2 and x_k^2."""
    return _block_graph("1", ("xm_2", "xi_2"), ("xl_2", "xk_2"))


def fig8_rep_fixture() -> VariableCountFamily:
    """Proper (not unit) closed representation of the fig8 block, depth
    exactly 4.  Intervals engaged outside the block are omitted, so
    per-vertex counts vary."""
    return VariableCountFamily(CLOSED, {
        "Ci": [_iv("0.1", "1.1")],
        "Ai": [_iv("-0.1", "0.9")],
        "Bi": [_iv(1, 2)],
        "xi_2": [_iv("-1.5", "0.2"), _iv("1.6", "2.6")],
        "xi_1": [_iv("-0.6", "0.4"), _iv("1.7", "3.3")],
        "xi_N": [_iv("0.6", "1.4")],
        "xm_2": [_iv(-2, -1)],
        "Lmi": [_iv("-2.8", "-1.3")],
        "pmi": [_iv("-3.5", "-2.5")],
        "xl_2": [_iv("6.6", "7.3")],
        "Llk": [_iv("6.8", "7.8")],
        "plk": [_iv("7.5", "8.5")],
        "xj_1": [_iv("2.9", "3.5")],
        "Ck": [_iv("4.1", "5.2")],
        "Ak": [_iv("3.9", "4.9")],
        "Bk": [_iv(5, 6)],
        "xk_2": [_iv("3.8", "4.4"), _iv("5.7", "6.9")],
        "xk_1": [_iv("3.2", "4.3"), _iv("5.6", "6.4")],
        "xk_N": [_iv("4.6", "5.4")],
    })


def fig9_block_fixture() -> ColoredGraph:
    """Contiguous block with the triangle on the x^2 vertices and the
    2-clause attachments on x_i^1 and x_k^1."""
    return _block_graph("2", ("xm_1", "xi_1"), ("xl_2", "xk_1"))


def fig9_rep_fixture() -> VariableCountFamily:
    """Open (11,11) representation of the fig9 block on the integer
    grid [0, 121]."""
    x = 11

    def span(left: int) -> Interval:
        return Interval(Fraction(left), Fraction(left + x))

    return VariableCountFamily(OPEN, {
        "Ci": [span(40)],
        "Ai": [span(30)],
        "Bi": [span(41)],
        "xi_1": [span(20), span(44)],
        "xi_2": [span(22), span(50)],
        "xm_1": [span(11)],
        "Lmi": [span(10)],
        "pmi": [span(0)],
        "xl_2": [span(99)],
        "Llk": [span(100)],
        "plk": [span(110)],
        "xj_2": [span(55)],
        "xi_N": [span(33)],
        "Ck": [span(80)],
        "Ak": [span(70)],
        "Bk": [span(81)],
        "xk_1": [span(66), span(90)],
        "xk_2": [span(60), span(88)],
        "xk_N": [span(77)],
    })


def padding_block_cnf_fixture() -> CnfFormula:
    """Smallest always-satisfiable restricted instance: one all-positive
    3-clause closed into a cycle of 2-clauses."""
    return CnfFormula(3, [(1, 2, 3), (1, -2), (2, -3), (3, -1)])


_BUILDERS = {
    "variable-gadget": ("colored_graph", variable_gadget_fixture),
    "three-clause": ("colored_graph", three_clause_fixture),
    "two-clause": ("colored_graph", two_clause_fixture),
    "black-gadget": ("graph", lambda: black_vertex_gadget("v")),
    "fig4a-rep": ("family", fig4a_rep_fixture),
    "fig4b-rep": ("family", fig4b_rep_fixture),
    "fig6-rep": ("family", fig6_rep_fixture),
    "fig8-block": ("colored_graph", fig8_block_fixture),
    "fig8-rep": ("family", fig8_rep_fixture),
    "fig9-block": ("colored_graph", fig9_block_fixture),
    "fig9-rep": ("family", fig9_rep_fixture),
    "padding-block-cnf": ("cnf", padding_block_cnf_fixture),
}

FIXTURE_NAMES = tuple(_BUILDERS)


def fixture_dir() -> Path:
    return Path(__file__).parent / "data" / "fixtures"


def fixture_kind(name: str) -> str:
    try:
        return _BUILDERS[name][0]
    except KeyError:
        raise InputError(
            f"unknown fixture {name!r}; available: "
            + ", ".join(FIXTURE_NAMES)) from None


def build_fixture(name: str):
    """Rebuild a fixture from its in-code transcription."""
    return _BUILDERS[name][1]()


def fixture_json_dict(name: str) -> dict:
    kind = fixture_kind(name)
    obj = build_fixture(name)
    if kind == "graph":
        return graph_to_json_dict(obj)
    if kind == "colored_graph":
        return colored_graph_to_json_dict(obj)
    if kind == "family":
        return family_to_json_dict(obj)
    return obj.to_json_dict()


def load_fixture(name: str):
    """Load a fixture from its committed JSON file."""
    kind = fixture_kind(name)
    path = fixture_dir() / f"{name}.json"
    data = json.loads(path.read_text())
    if kind in ("graph", "colored_graph"):
        return graph_from_json_dict(data)
    if kind == "family":
        return family_from_json_dict(data)
    return cnf_from_json_dict(data)


def write_fixture_files(target: Path = None) -> list[Path]:
    """Regenerate every committed fixture JSON; returns written paths."""
    target = fixture_dir() if target is None else Path(target)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name in FIXTURE_NAMES:
        path = target / f"{name}.json"
        text = json.dumps(fixture_json_dict(name), indent=2, sort_keys=True)
        path.write_text(text + "\n")
        written.append(path)
    return written
