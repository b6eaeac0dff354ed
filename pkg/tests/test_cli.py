"""CLI tests driven through main(argv): exit codes, JSON shapes, pipes."""

import json

import pytest

from lattice_rearrange.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_instance(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


CYCLE_INSTANCE = {"kind": "labeled", "dims": [4, 1],
                  "pi": [3, 2, 4, 1], "rest": 1}
CYCLE_PLAN = {"steps": [{"cell": 1, "action": "pick"},
                        {"cell": 3, "action": "swap"},
                        {"cell": 4, "action": "swap"},
                        {"cell": 1, "action": "place"}]}


class TestGen:
    def test_uniform_writes_versioned_instance(self, capsys):
        code, out, _ = run(capsys, "gen", "uniform", "--m", "8", "--seed", "5")
        assert code == 0
        doc = json.loads(out)
        assert doc["format_version"] == 1
        assert doc["kind"] == "labeled" and sorted(doc["pi"]) == list(range(1, 9))

    def test_every_distribution_has_a_happy_path(self, capsys):
        invocations = [
            ("gen", "uniform", "--m", "6"),
            ("gen", "x-random", "--m", "12", "--x", "3"),
            ("gen", "column-random", "--m1", "3", "--m2", "4"),
            ("gen", "block-random", "--m", "4"),
            ("gen", "typed", "--m1", "4", "--m2", "4", "--k", "4"),
            ("gen", "typed", "--m1", "3", "--m2", "3", "--k", "3",
             "--pattern", "columns"),
            ("gen", "tsp-clusters", "--m1", "5", "--m2", "5",
             "--points", "2,2;2,4"),
        ]
        for argv in invocations:
            code, out, _ = run(capsys, *argv)
            assert code == 0, argv
            assert json.loads(out)["format_version"] == 1

    def test_same_seed_same_bytes(self, capsys):
        a = run(capsys, "gen", "uniform", "--m", "30", "--seed", "3")
        b = run(capsys, "gen", "uniform", "--m", "30", "--seed", "3")
        assert a == b

    def test_env_var_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("LATTICE_REARRANGE_SEED", "9")
        _, from_env, _ = run(capsys, "gen", "uniform", "--m", "10")
        monkeypatch.delenv("LATTICE_REARRANGE_SEED")
        _, from_flag, _ = run(capsys, "gen", "uniform", "--m", "10",
                              "--seed", "9")
        assert from_env == from_flag

    def test_missing_conditional_flag_is_usage_error(self, capsys):
        code, _, err = run(capsys, "gen", "x-random", "--m", "12")
        assert code == 2 and "--x" in err

    def test_unknown_flag_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "gen", "uniform", "--m", "5", "--bogus")
        assert code == 2

    def test_infeasible_pattern_is_domain_error(self, capsys):
        code, _, err = run(capsys, "gen", "typed", "--m1", "4", "--m2", "4",
                           "--k", "3", "--pattern", "columns")
        assert code == 1
        assert json.loads(err)["error"] == "PatternInfeasible"


class TestSolveAndValidate:
    def test_identity_solves_to_empty_plan(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "id.json", {
            "kind": "labeled", "dims": [5, 1],
            "pi": [1, 2, 3, 4, 5], "rest": 1})
        code, out, err = run(capsys, "solve", "--solver", "opt-lor",
                             "-i", inst)
        assert code == 0
        doc = json.loads(out)
        assert doc["steps"] == []
        assert doc["cost"] == {"picks": 0, "travel": 0.0, "total": 0.0}
        assert "picks=0" in err

    @pytest.mark.parametrize("solver,instance", [
        ("sweep-lor", CYCLE_INSTANCE),
        ("opt-lor", CYCLE_INSTANCE),
        ("sweep-ltr", {"kind": "labeled", "dims": [2, 2],
                       "pi": [2, 1, 4, 3], "rest": 1}),
        ("switch-ltr", {"kind": "labeled", "dims": [2, 2],
                        "pi": [2, 1, 4, 3], "rest": 1}),
        ("opt-por", {"kind": "typed", "dims": [6, 1], "k": 2,
                     "start_types": [2, 1, 2, 1, 1, 2],
                     "goal_types": [1, 1, 1, 2, 2, 2], "rest": 1}),
        ("greedy-por", {"kind": "typed", "dims": [6, 1], "k": 2,
                        "start_types": [2, 1, 2, 1, 1, 2],
                        "goal_types": [1, 1, 1, 2, 2, 2], "rest": 1}),
        ("plan-ptr", {"kind": "typed", "dims": [3, 3], "k": 3,
                      "start_types": [3, 1, 2, 2, 3, 1, 1, 2, 3],
                      "goal_types": [1, 1, 1, 2, 2, 2, 3, 3, 3], "rest": 1}),
        ("greedy-2d", {"kind": "typed", "dims": [3, 3], "k": 3,
                       "start_types": [3, 1, 2, 2, 3, 1, 1, 2, 3],
                       "goal_types": [1, 1, 1, 2, 2, 2, 3, 3, 3], "rest": 1}),
    ])
    def test_every_solver_output_passes_validate(self, capsys, tmp_path,
                                                 solver, instance):
        inst = write_instance(tmp_path, "inst.json", instance)
        plan_path = str(tmp_path / "plan.json")
        code, _, _ = run(capsys, "solve", "--solver", solver, "-i", inst,
                         "-o", plan_path)
        assert code == 0
        code, out, _ = run(capsys, "validate", "--instance", inst,
                           "--plan", plan_path)
        assert code == 0
        assert json.loads(out)["solved"] is True

    def test_validate_reports_cost_of_cycle_plan(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "i.json", CYCLE_INSTANCE)
        plan = write_instance(tmp_path, "p.json", CYCLE_PLAN)
        code, out, _ = run(capsys, "validate", "--instance", inst,
                           "--plan", plan)
        assert code == 0
        doc = json.loads(out)
        assert doc["picks"] == 4 and doc["travel"] == pytest.approx(6.0)

    def test_validate_flags_illegal_step(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "i.json", CYCLE_INSTANCE)
        plan = write_instance(tmp_path, "p.json", {
            "steps": [{"cell": 2, "action": "swap"}]})
        code, _, err = run(capsys, "validate", "--instance", inst,
                           "--plan", plan)
        assert code == 1
        assert json.loads(err)["error"] == "IllegalStep"

    def test_validate_flags_unsolving_plan(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "i.json", CYCLE_INSTANCE)
        plan = write_instance(tmp_path, "p.json", {
            "steps": [{"cell": 1, "action": "pick"},
                      {"cell": 1, "action": "place"}]})
        code, _, err = run(capsys, "validate", "--instance", inst,
                           "--plan", plan)
        assert code == 1
        assert json.loads(err)["error"] == "PlanDoesNotSolve"

    def test_solver_kind_mismatch_is_domain_error(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "i.json", CYCLE_INSTANCE)
        code, _, err = run(capsys, "solve", "--solver", "opt-por", "-i", inst)
        assert code == 1
        assert json.loads(err)["error"] == "SolverMismatch"

    def test_malformed_json_never_panics(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "solve", "--solver", "opt-lor",
                           "-i", str(bad))
        assert code == 1
        assert "error" in json.loads(err)


class TestOracle:
    def test_matches_exact_solver(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "i.json", CYCLE_INSTANCE)
        code, out, _ = run(capsys, "oracle", "-i", inst)
        assert code == 0
        oracle_doc = json.loads(out)
        code, out, _ = run(capsys, "solve", "--solver", "opt-lor", "-i", inst)
        solve_doc = json.loads(out)
        assert oracle_doc["picks"] == solve_doc["cost"]["picks"]
        assert oracle_doc["travel"] == pytest.approx(solve_doc["cost"]["travel"])

    def test_total_objective(self, capsys, tmp_path):
        inst = write_instance(tmp_path, "i.json", CYCLE_INSTANCE)
        code, out, _ = run(capsys, "oracle", "-i", inst,
                           "--objective", "total", "--cap", "100000")
        assert code == 0
        doc = json.loads(out)
        assert doc["total"] == pytest.approx(doc["picks"] + doc["travel"])


class TestBench:
    def test_repeat_runs_are_byte_identical(self, capsys):
        argv = ("bench", "--experiment", "lor_ratio", "--sizes", "20",
                "--trials", "5", "--seed", "7")
        a = run(capsys, *argv)
        b = run(capsys, *argv)
        assert a == b
        assert a[0] == 0 and a[1].startswith("size,statistic,mean,std")

    def test_json_format_and_file_output(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run(capsys, "bench", "--experiment", "cycle_stats",
                         "--sizes", "30", "40", "--trials", "4",
                         "--seed", "1", "--format", "json",
                         "-o", str(out_path))
        assert code == 0
        doc = json.loads(out_path.read_text(encoding="utf-8"))
        assert doc["format_version"] == 1
        assert {r["size"] for r in doc["rows"]} == {30, 40}

    def test_bad_distribution_is_domain_error(self, capsys):
        code, _, err = run(capsys, "bench", "--experiment", "lor_ratio",
                           "--sizes", "10", "--distribution", "pattern-a")
        assert code == 1
        assert json.loads(err)["error"] == "ValueError"


class TestTopLevel:
    def test_help_exits_zero_and_names_everything(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        flat = out.replace("\n", "")  # argparse wraps long epilog lines
        for name in ("gen", "solve", "validate", "oracle", "bench",
                     "plan-ptr", "lor_ratio"):
            assert name in flat

    def test_no_subcommand_is_usage_error(self, capsys):
        code, _, _ = run(capsys)
        assert code == 2
