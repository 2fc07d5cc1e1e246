import json

import pytest

from multiinterval.cli import main, run_pipeline
from multiinterval.fixtures import fixture_json_dict
from multiinterval.graphs import graph_to_json_dict
from multiinterval.intervals import family_to_json_dict

from conftest import make_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) + "\n")
    return str(path)


def claw_json(tmp_path):
    g = make_graph("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
    return write_json(tmp_path, "claw.json", graph_to_json_dict(g))


def fixture_file(tmp_path, name):
    return write_json(tmp_path, f"{name}.json", fixture_json_dict(name))


class TestGadget:
    def test_black_gadget_shape(self, capsys):
        code, data, _ = run_json(capsys, "gadget", "black-gadget")
        assert code == 0
        assert len(data["vertices"]) == 9
        assert len(data["edges"]) == 9

    def test_emits_fixture_verbatim(self, capsys):
        code, data, _ = run_json(capsys, "gadget", "fig9-rep")
        assert code == 0
        assert data == fixture_json_dict("fig9-rep")

    def test_unknown_name_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gadget", "no-such-gadget"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_byte_determinism(self, capsys):
        _, first, _ = run(capsys, "gadget", "fig8-rep")
        _, second, _ = run(capsys, "gadget", "fig8-rep")
        assert first == second


class TestReduce:
    def test_dimacs_input(self, capsys, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 4 4\n1 2 3 0\n-1 2 4 0\n1 -2 -4 0\n-1 -3 -4 0\n")
        code, data, _ = run_json(capsys, "reduce", "--input", str(cnf))
        assert code == 0
        assert "restricted" in data and "colored_graph" in data
        stats = data["size_stats"]
        assert stats["max_degree"] <= 6

    def test_already_restricted_input_kept(self, capsys, tmp_path):
        path = fixture_file(tmp_path, "padding-block-cnf")
        code, data, _ = run_json(capsys, "reduce", "--input", path)
        assert code == 0
        # the padding block is already in restricted shape: 3 variables,
        # so six gadget vertices each plus two per 2-clause
        assert data["size_stats"]["vertices"] == 24
        assert data["size_stats"]["edges"] == 51

    def test_missing_file(self, capsys):
        code, out, err = run(capsys, "reduce", "--input", "/nonexistent.cnf")
        assert code == 2
        assert "error" in err


class TestRecognize:
    def test_all_black_claw_both_oracles_say_no(self, capsys, tmp_path):
        cg = {"vertices": ["c", "x", "y", "z"],
              "edges": [["c", "x"], ["c", "y"], ["c", "z"]],
              "colors": {"c": "black", "x": "black", "y": "black",
                         "z": "black"}}
        path = write_json(tmp_path, "claw-black.json", cg)
        code, data, _ = run_json(capsys, "recognize", "--input", path,
                                 "--colored", "--oracle", "both")
        assert code == 1
        assert data["answers"] == {"order": False, "splits": False}
        assert data["agree"] is True
        assert data["witness"] is None

    def test_plain_graph_with_d(self, capsys, tmp_path):
        path = claw_json(tmp_path)
        code, data, _ = run_json(capsys, "recognize", "--input", path,
                                 "--d", "2")
        assert code == 0
        assert data["answers"]["order"] is True
        assert data["witness"] is not None

    def test_depth_cap_with_splits_rejected(self, capsys, tmp_path):
        path = claw_json(tmp_path)
        code, _, err = run(capsys, "recognize", "--input", path,
                           "--oracle", "splits", "--depth-cap", "3")
        assert code == 2

    def test_capacity_exit(self, capsys, tmp_path):
        vs = [f"v{i}" for i in range(19)]
        g = make_graph(vs, [(vs[i], vs[i + 1]) for i in range(18)])
        path = write_json(tmp_path, "p19.json", graph_to_json_dict(g))
        code, _, err = run(capsys, "recognize", "--input", path, "--d", "2")
        assert code == 3
        assert "stopped" in err


class TestValidate:
    def test_good_representation(self, capsys, tmp_path):
        graph = fixture_file(tmp_path, "black-gadget")
        rep = fixture_file(tmp_path, "fig6-rep")
        code, data, _ = run_json(capsys, "validate", "--graph", graph,
                                 "--rep", rep, "--require", "unit")
        assert code == 0
        assert data["ok"] is True

    def test_broken_representation(self, capsys, tmp_path):
        graph = fixture_file(tmp_path, "black-gadget")
        fam = fixture_json_dict("fig6-rep")
        victim = next(iter(fam["intervals"]))
        fam["intervals"][victim][0] = [1000, 1, 1001, 1]
        rep = write_json(tmp_path, "broken.json", fam)
        code, data, _ = run_json(capsys, "validate", "--graph", graph,
                                 "--rep", rep)
        assert code == 1
        assert data["ok"] is False
        assert data["missing_edges"]

    def test_require_integer_x(self, capsys, tmp_path):
        graph = fixture_file(tmp_path, "fig9-block")
        rep = fixture_file(tmp_path, "fig9-rep")
        code, data, _ = run_json(capsys, "validate", "--graph", graph,
                                 "--rep", rep, "--require",
                                 "open,integer_x=11")
        assert code == 0

    def test_bad_require_token(self, capsys, tmp_path):
        graph = fixture_file(tmp_path, "black-gadget")
        rep = fixture_file(tmp_path, "fig6-rep")
        code, _, err = run(capsys, "validate", "--graph", graph,
                           "--rep", rep, "--require", "sparkly")
        assert code == 2


class TestSmallCommands:
    def test_depth(self, capsys, tmp_path):
        rep = fixture_file(tmp_path, "fig6-rep")
        code, data, _ = run_json(capsys, "depth", "--input", rep)
        assert code == 0
        assert data == {"depth": 3}

    def test_forbidden_hit(self, capsys, tmp_path):
        path = claw_json(tmp_path)
        code, data, _ = run_json(capsys, "forbidden", "--input", path)
        assert code == 0
        assert data["certificate"]["kind"] == "claw"

    def test_forbidden_clean(self, capsys, tmp_path):
        g = make_graph("abc", [("a", "b"), ("b", "c")])
        path = write_json(tmp_path, "p3.json", graph_to_json_dict(g))
        code, data, _ = run_json(capsys, "forbidden", "--input", path)
        assert code == 1
        assert data["certificate"] is None

    def test_decolorize(self, capsys, tmp_path):
        path = fixture_file(tmp_path, "variable-gadget")
        code, data, _ = run_json(capsys, "decolorize", "--input", path)
        assert code == 0
        assert data["size_stats"]["vertices"] == 3 + 9 * 3

    def test_lift(self, capsys, tmp_path):
        path = fixture_file(tmp_path, "black-gadget")
        code, data, _ = run_json(capsys, "lift", "--input", path, "--d", "3")
        assert code == 0
        assert data["size_stats"]["vertices"] == 13 * 9

    def test_intrep_success_and_timings_flag(self, capsys, tmp_path):
        g = make_graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
        path = write_json(tmp_path, "p4.json", graph_to_json_dict(g))
        code, data, _ = run_json(capsys, "intrep", "--input", path,
                                 "--d", "1", "--x", "2", "--coord-max", "10")
        assert code == 0
        assert data["family"] is not None
        assert "wall_ms" not in data["stats"]
        code, data, _ = run_json(capsys, "intrep", "--input", path,
                                 "--d", "1", "--x", "2", "--coord-max", "10",
                                 "--timings")
        assert "wall_ms" in data["stats"]

    def test_intrep_negative(self, capsys, tmp_path):
        g = make_graph("abc")
        path = write_json(tmp_path, "bare.json", graph_to_json_dict(g))
        code, data, _ = run(capsys, "intrep", "--input", path,
                            "--d", "1", "--x", "2", "--coord-max", "4")
        assert code == 1


class TestPipeline:
    def test_zero_instances(self, capsys):
        code, data, _ = run_json(capsys, "pipeline", "--count", "0")
        assert code == 0
        assert data["records"] == []
        assert data["summary"]["instances"] == 0
        assert data["summary"]["all_agree"] is True

    def test_seeded_batch(self, capsys):
        code, data, _ = run_json(capsys, "pipeline", "--seed", "1",
                                 "--count", "10", "--max-vars", "4")
        assert code == 0
        s = data["summary"]
        assert s["instances"] == 10
        assert s["mismatches"] == 0
        assert s["errors"] == 0
        assert s["all_agree"] is True

    def test_jobs_do_not_change_bytes(self, capsys):
        _, serial, _ = run(capsys, "pipeline", "--seed", "3", "--count", "6",
                           "--max-vars", "4")
        _, threaded, _ = run(capsys, "pipeline", "--seed", "3", "--count", "6",
                             "--max-vars", "4", "--jobs", "3")
        assert serial == threaded

    def test_fixture_input(self, capsys, tmp_path):
        path = fixture_file(tmp_path, "padding-block-cnf")
        code, data, _ = run_json(capsys, "pipeline", "--input", path)
        assert code == 0
        assert data["summary"]["instances"] == 1
        assert data["summary"]["agreements"] == 1

    def test_run_pipeline_object(self):
        report = run_pipeline(7, {"instances": 5}, {}, jobs=1)
        assert report.summary["instances"] == 5
        assert report.all_agree
