"""The ``mil`` command line.

Each subcommand wraps one library operation and speaks JSON on stdout
(or ``--output``).  Artifacts are byte-deterministic: keys are sorted,
indentation is fixed, and wall-clock fields only appear behind
``--timings``.

Exit codes: 0 for a positive or agreeing outcome, 1 for a valid
negative answer (not representable, violations found, no obstruction),
2 for bad input or usage, 3 when a capacity bound or time budget stops
the run before an answer is reached.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .errors import BudgetExhausted, CapacityError, InputError
from .fixtures import FIXTURE_NAMES, fixture_json_dict
from .graphs import (
    WHITE,
    ColoredGraph,
    find_forbidden_unit_interval,
    graph_from_json_dict,
)
from .intervals import (
    depth,
    family_from_json_dict,
    family_to_json_dict,
    validate_representation,
)
from .intrep import SearchConfig, find_integer_rep
from .order_search import colored_profile, recognize_unit_d, uniform_profile
from .reduction import (
    CnfFormula,
    as_restricted,
    build_reduction_graph,
    cnf_from_json_dict,
    decolorize,
    end_to_end_check,
    lift_to_d,
    parse_dimacs,
    preprocess_to_exactly3,
    restrict_sat,
)
from .splits import recognize_colored_unit2_via_splits

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


# ---------------------------------------------------------------- I/O helpers

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None


def _load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _load_cnf(path: str) -> CnfFormula:
    """A formula from DIMACS text or from the JSON shape with
    num_vars/clauses keys, told apart by the leading character."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            return cnf_from_json_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise InputError(f"{path} is not valid JSON: {e}") from None
    return parse_dimacs(text)


def _load_graph(path: str):
    return graph_from_json_dict(_load_json(path))


def _plain_graph(obj):
    return obj.graph if isinstance(obj, ColoredGraph) else obj


def _emit(obj, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------- subcommands

def _cmd_reduce(args) -> int:
    f = _load_cnf(args.input)
    restricted = as_restricted(f)
    if restricted is None:
        restricted = restrict_sat(preprocess_to_exactly3(f))
    trace = build_reduction_graph(restricted)
    out = {"restricted": restricted.to_json_dict()}
    out.update(trace.to_json_dict())
    _emit(out, args.output)
    return EXIT_OK


def _cmd_decolorize(args) -> int:
    g = _load_graph(args.input)
    if not isinstance(g, ColoredGraph):
        raise InputError("decolorize needs a colored graph "
                         "(the input JSON has no 'colors' key)")
    _emit(decolorize(g).to_json_dict(), args.output)
    return EXIT_OK


def _cmd_lift(args) -> int:
    g = _load_graph(args.input)
    if isinstance(g, ColoredGraph):
        raise InputError("lift takes an uncolored graph; run decolorize first")
    _emit(lift_to_d(g, args.d).to_json_dict(), args.output)
    return EXIT_OK


def _cmd_recognize(args) -> int:
    obj = _load_graph(args.input)
    colored = isinstance(obj, ColoredGraph)
    if args.colored and not colored:
        raise InputError("--colored given but the input JSON has no 'colors'")
    wants_splits = args.oracle in ("splits", "both")
    if args.depth_cap is not None and wants_splits:
        raise InputError("--depth-cap applies to the order oracle only")

    if colored:
        if args.d not in (None, 2):
            raise InputError("colored recognition is the two-interval case; "
                             "drop --d or pass --d 2")
        cg: Optional[ColoredGraph] = obj
        g = obj.graph
        profile = colored_profile(obj)
    else:
        g = obj
        d = 2 if args.d is None else args.d
        if d < 1:
            raise InputError("--d must be positive")
        if wants_splits and d != 2:
            raise InputError("the split oracle handles d=2 only")
        cg = None
        profile = uniform_profile(g, d)

    answers: dict[str, bool] = {}
    witness = None
    if args.oracle in ("order", "both"):
        fam = recognize_unit_d(g, profile, depth_cap=args.depth_cap,
                               budget_ms=args.budget_ms)
        answers["order"] = fam is not None
        if fam is not None:
            witness = family_to_json_dict(fam)
    if wants_splits:
        if cg is None:
            cg = ColoredGraph(g, {v: WHITE for v in g.vertices})
        hit = recognize_colored_unit2_via_splits(cg, budget_ms=args.budget_ms)
        answers["splits"] = hit is not None
        if hit is not None and witness is None:
            witness = family_to_json_dict(hit[1])

    agree = len(set(answers.values())) == 1 if len(answers) > 1 else None
    _emit({"answers": answers, "agree": agree, "witness": witness},
          args.output)
    if agree is False:
        print("warning: the oracles disagree; this is a bug worth reporting",
              file=sys.stderr)
        return EXIT_NO
    return EXIT_OK if all(answers.values()) else EXIT_NO


_REQUIRE_FLAGS = ("unit", "balanced", "open", "closed")
_REQUIRE_VALUED = ("integer_x", "max_depth")


def _parse_require(req: Optional[str]):
    required: dict = {}
    use_colors = False
    for token in (req or "").split(","):
        token = token.strip()
        if not token:
            continue
        key, eq, value = token.partition("=")
        if key == "colored":
            use_colors = True
        elif key in _REQUIRE_FLAGS and not eq:
            required[key] = True
        elif key in _REQUIRE_VALUED and eq:
            try:
                required[key] = int(value)
            except ValueError:
                raise InputError(f"--require {key} needs an integer, "
                                 f"got {value!r}") from None
        else:
            raise InputError(
                f"unknown --require token {token!r}; valid: "
                + ", ".join(_REQUIRE_FLAGS)
                + ", " + ", ".join(k + "=N" for k in _REQUIRE_VALUED)
                + ", colored")
    return required, use_colors


def _cmd_validate(args) -> int:
    gobj = _load_graph(args.graph)
    fam = family_from_json_dict(_load_json(args.rep))
    required, use_colors = _parse_require(args.require)
    cg = gobj if isinstance(gobj, ColoredGraph) else None
    if use_colors and cg is None:
        raise InputError("--require colored needs a graph JSON with colors")
    report = validate_representation(_plain_graph(gobj), fam,
                                     required=required or None,
                                     colored=cg if use_colors else None)
    _emit(report.to_json_dict(), args.output)
    return EXIT_OK if report.ok() else EXIT_NO


def _cmd_depth(args) -> int:
    fam = family_from_json_dict(_load_json(args.input))
    _emit({"depth": depth(fam)}, args.output)
    return EXIT_OK


def _cmd_forbidden(args) -> int:
    g = _plain_graph(_load_graph(args.input))
    cert = find_forbidden_unit_interval(g)
    _emit({"certificate": None if cert is None else cert.to_json_dict()},
          args.output)
    return EXIT_OK if cert is not None else EXIT_NO


def _cmd_gadget(args) -> int:
    _emit(fixture_json_dict(args.name), args.output)
    return EXIT_OK


def _cmd_intrep(args) -> int:
    g = _load_graph(args.input)
    if isinstance(g, ColoredGraph):
        raise InputError("intrep searches uncolored graphs; colors have no "
                         "meaning for an all-d family")
    cfg = SearchConfig(args.d, args.x, args.coord_max,
                       depth_cap=args.depth_cap, budget_ms=args.budget_ms)
    stats: dict = {}
    fam = find_integer_rep(g, cfg, stats)
    if not args.timings:
        stats.pop("wall_ms", None)
    _emit({"config": cfg.to_json_dict(),
           "family": None if fam is None else family_to_json_dict(fam),
           "stats": stats}, args.output)
    return EXIT_OK if fam is not None else EXIT_NO


# ------------------------------------------------------------------ pipeline

class PipelineReport:
    """End-to-end run over a batch of formulas: one record per instance
    plus tallies.  Records keep the per-oracle answers and notes from
    end_to_end_check; errors are recorded, never raised."""

    __slots__ = ("seed", "counts", "budgets", "records", "summary")

    def __init__(self, seed, counts, budgets, records):
        self.seed = seed
        self.counts = dict(counts)
        self.budgets = dict(budgets)
        self.records = records
        self.summary = {
            "instances": len(records),
            "agreements": sum(1 for r in records if r.get("agree") is True),
            "mismatches": sum(1 for r in records if r.get("agree") is False),
            "incomplete": sum(1 for r in records if not r.get("complete")),
            "errors": sum(1 for r in records if "error" in r),
            "budget_exhaustions": sum(
                1 for r in records
                if any("budget exhausted" in n for n in r.get("notes", ()))),
        }
        self.summary["all_agree"] = self.summary["mismatches"] == 0

    @property
    def all_agree(self) -> bool:
        return self.summary["mismatches"] == 0

    def to_json_dict(self, include_timings: bool = True) -> dict:
        records = []
        for rec in self.records:
            rec = dict(rec)
            if not include_timings:
                rec.pop("timings_ms", None)
            records.append(rec)
        return {"seed": self.seed, "counts": self.counts,
                "budgets": self.budgets, "records": records,
                "summary": dict(self.summary)}


def _random_exactly3(rng: random.Random, max_vars: int) -> CnfFormula:
    n = rng.randint(3, max(3, max_vars))
    m = rng.randint(1, 2 * n)
    clauses = []
    for _ in range(m):
        chosen = rng.sample(range(1, n + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v
                             for v in chosen))
    return CnfFormula(n, clauses)


def run_pipeline(seed: int, counts, budgets, *, jobs: int = 1,
                 include: Sequence[tuple[str, CnfFormula]] = ()
                 ) -> PipelineReport:
    """Generate seeded random exactly-3 formulas, push each through
    preprocess, restrict, graph construction and recognition, and tally
    agreement with brute-force satisfiability.

    counts: mapping with "instances" and optionally "max_vars" (default 4).
    budgets: mapping with optional "per_instance_ms".
    include: extra (id, formula) pairs checked before the random ones.

    Deterministic given seed and inputs; per-instance failures land in
    the record as an "error" entry instead of raising.
    """
    counts = dict(counts)
    budgets = dict(budgets)
    per_ms = budgets.get("per_instance_ms")
    rng = random.Random(seed)
    items: list[tuple[str, CnfFormula]] = list(include)
    for i in range(counts.get("instances", 0)):
        items.append((f"random-{i:03d}",
                      _random_exactly3(rng, counts.get("max_vars", 4))))

    def work(item):
        name, formula = item
        record = {"id": name, "num_vars": formula.num_vars,
                  "num_clauses": len(formula.clauses)}
        try:
            report = end_to_end_check(formula, budget_ms=per_ms)
        except (InputError, CapacityError) as e:
            record.update(error=str(e), agree=None, complete=False, notes=[])
            return record
        record.update(report.to_json_dict(include_timings=True))
        return record

    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(work, items))
    else:
        records = [work(item) for item in items]
    return PipelineReport(seed, counts, budgets, records)


def _cmd_pipeline(args) -> int:
    include = [(f"input-{i:02d}", _load_cnf(path))
               for i, path in enumerate(args.input or [])]
    report = run_pipeline(
        args.seed,
        {"instances": args.count, "max_vars": args.max_vars},
        {"per_instance_ms": args.budget_ms},
        jobs=args.jobs, include=include)
    _emit(report.to_json_dict(include_timings=args.timings), args.output)
    return EXIT_OK if report.all_agree else EXIT_NO


# -------------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mil",
        description="Exact toolkit for unit d-interval graph questions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--output", metavar="FILE",
                       help="write the JSON artifact here instead of stdout")
        return p

    p = add("reduce", _cmd_reduce,
            "CNF to restricted form and its colored graph")
    p.add_argument("--input", required=True, metavar="FILE",
                   help="DIMACS CNF or formula JSON")

    p = add("decolorize", _cmd_decolorize,
            "replace black vertices by attachment gadgets")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("lift", _cmd_lift, "attach hub gadgets for the d-interval case")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--d", required=True, type=int, help="target d (>= 3)")

    p = add("recognize", _cmd_recognize,
            "decide unit d-interval representability")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--oracle", choices=("splits", "order", "both"),
                   default="order")
    p.add_argument("--colored", action="store_true",
                   help="insist the input carries colors")
    p.add_argument("--d", type=int, help="intervals per vertex (default 2)")
    p.add_argument("--depth-cap", type=int)
    p.add_argument("--budget-ms", type=int)

    p = add("validate", _cmd_validate,
            "check a representation against a graph")
    p.add_argument("--graph", required=True, metavar="FILE")
    p.add_argument("--rep", required=True, metavar="FILE")
    p.add_argument("--require", metavar="LIST",
                   help="comma list: unit, balanced, open, closed, colored, "
                        "integer_x=N, max_depth=N")

    p = add("depth", _cmd_depth, "maximum point coverage of a family")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("forbidden", _cmd_forbidden,
            "find an induced claw, net, tent, or hole")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("gadget", _cmd_gadget, "emit a named fixture as JSON")
    p.add_argument("name", choices=FIXTURE_NAMES, metavar="NAME",
                   help="one of: " + ", ".join(FIXTURE_NAMES))

    p = add("intrep", _cmd_intrep,
            "search for an open integer fixed-length representation")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--x", required=True, type=int)
    p.add_argument("--coord-max", required=True, type=int)
    p.add_argument("--depth-cap", type=int)
    p.add_argument("--budget-ms", type=int)
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock stats in the artifact")

    p = add("pipeline", _cmd_pipeline,
            "batch formulas end to end and tally agreement")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=0,
                   help="number of random exactly-3 formulas")
    p.add_argument("--max-vars", type=int, default=4)
    p.add_argument("--budget-ms", type=int,
                   help="per-instance recognition budget")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--input", action="append", metavar="FILE",
                   help="also run this formula (repeatable)")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock fields in the artifact")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (CapacityError, BudgetExhausted) as e:
        print(f"stopped: {e}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
