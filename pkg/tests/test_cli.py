import re

import pytest

import encgraph.transform
from encgraph import DeltaReport, read_graph
from encgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def grab(out, key):
    match = re.search(rf"^{re.escape(key)}: (.+)$", out, re.MULTILINE)
    assert match, f"no {key!r} line in output:\n{out}"
    return match.group(1)


@pytest.fixture
def worked_graph(tmp_path):
    path = tmp_path / "worked.encg"
    path.write_text("encg 1\n9 1\n9 1\n", encoding="utf-8")
    return path


class TestGen:
    def test_writes_the_seeded_graph(self, capsys, tmp_path):
        out_path = tmp_path / "g.encg"
        code, out, _ = run(
            capsys, "gen", "--regions", "2", "--hidden-min", "9", "--hidden-max", "9",
            "--viol-min", "1", "--viol-max", "1", "--out", str(out_path),
        )
        assert code == 0
        assert out_path.read_text() == "encg 1\n9 1\n9 1\n"
        assert "regions=2 nodes=20 violational=2" in out

    def test_stdout_when_no_out_flag(self, capsys):
        code, out, _ = run(
            capsys, "gen", "--regions", "1", "--hidden-min", "3", "--hidden-max", "3",
            "--viol-min", "2", "--viol-max", "2",
        )
        assert code == 0
        assert out == "encg 1\n3 2\n"

    def test_repeated_runs_are_byte_identical(self, capsys, tmp_path):
        args = ["gen", "--regions", "50", "--hidden-min", "0", "--hidden-max", "30",
                "--viol-min", "1", "--viol-max", "9", "--seed", "13"]
        first = tmp_path / "a.encg"
        second = tmp_path / "b.encg"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()

    def test_invalid_bounds_exit_1(self, capsys):
        code, _, err = run(
            capsys, "gen", "--regions", "3", "--hidden-min", "5", "--hidden-max", "4",
            "--viol-min", "1", "--viol-max", "1",
        )
        assert code == 1
        assert "hidden bounds" in err


class TestMpe:
    def test_worked_example_summary(self, capsys, worked_graph):
        code, out, _ = run(capsys, "mpe", str(worked_graph))
        assert code == 0
        assert grab(out, "internal-mpe") == "180"
        assert grab(out, "external-mpe") == "20"
        assert grab(out, "total-mpe") == "200"
        assert grab(out, "configuration-efficiency") == "0.473684"
        assert grab(out, "hidden-stddev") == "0.000000"

    def test_empty_graph(self, capsys, tmp_path):
        path = tmp_path / "empty.encg"
        path.write_text("encg 1\n", encoding="utf-8")
        code, out, _ = run(capsys, "mpe", str(path))
        assert code == 0
        assert grab(out, "total-mpe") == "0"
        assert grab(out, "configuration-efficiency") == "1.000000"

    def test_malformed_file_exit_1_with_line_number(self, capsys, tmp_path):
        path = tmp_path / "bad.encg"
        path.write_text("encg 1\n1 1\n-2 1\n", encoding="utf-8")
        code, _, err = run(capsys, "mpe", str(path))
        assert code == 1
        assert "line 3" in err

    def test_missing_file_exit_1(self, capsys, tmp_path):
        code, _, err = run(capsys, "mpe", str(tmp_path / "nope.encg"))
        assert code == 1


class TestPredictAndApply:
    def test_predict_worked_example(self, capsys, worked_graph):
        code, out, _ = run(
            capsys, "predict", str(worked_graph),
            "translate-hidden", "--from", "0", "--to", "1", "-m", "1",
        )
        assert code == 0
        assert grab(out, "delta") == "+2"
        assert grab(out, "total-mpe-after") == "202"

    def test_predict_convert(self, capsys, tmp_path):
        path = tmp_path / "g.encg"
        path.write_text("encg 1\n5 3\n2 1\n", encoding="utf-8")
        code, out, _ = run(capsys, "predict", str(path), "convert", "--region", "1", "-m", "1")
        assert code == 0
        assert grab(out, "delta") == "+8"

    def test_fundamental_kinds_report_the_split(self, capsys, worked_graph):
        code, out, _ = run(
            capsys, "predict", str(worked_graph), "add-violational", "--region", "0", "-m", "1",
        )
        assert code == 0
        assert grab(out, "delta") == "+31"
        assert grab(out, "delta-internal") == "+20"
        assert grab(out, "delta-external") == "+11"

    def test_apply_then_mpe_agree_with_the_printed_delta(self, capsys, worked_graph, tmp_path):
        out_path = tmp_path / "after.encg"
        code, out, _ = run(
            capsys, "apply", str(worked_graph),
            "translate-hidden", "--from", "0", "--to", "1", "-m", "1",
            "--out", str(out_path),
        )
        assert code == 0
        delta = int(grab(out, "delta"))
        before = int(grab(out, "total-mpe-before"))
        assert grab(out, "checked") == "deep"
        code, out, _ = run(capsys, "mpe", str(out_path))
        assert code == 0
        assert int(grab(out, "total-mpe")) == before + delta

    def test_apply_writes_the_transformed_graph(self, capsys, worked_graph, tmp_path):
        out_path = tmp_path / "after.encg"
        code, _, _ = run(
            capsys, "apply", str(worked_graph), "add-violational", "--region", "0",
            "-m", "1", "--out", str(out_path),
        )
        assert code == 0
        assert out_path.read_text() == "encg 1\n9 2\n9 1\n"

    def test_underflow_exit_1(self, capsys, worked_graph, tmp_path):
        code, _, err = run(
            capsys, "apply", str(worked_graph), "add-hidden", "--region", "0",
            "-m", "-99", "--out", str(tmp_path / "x.encg"),
        )
        assert code == 1
        assert "short by" in err

    def test_same_source_and_target_exit_1(self, capsys, worked_graph):
        code, _, err = run(
            capsys, "predict", str(worked_graph),
            "translate-hidden", "--from", "1", "--to", "1", "-m", "1",
        )
        assert code == 1
        assert "must differ" in err

    def test_shallow_checking_past_the_enumeration_limit(self, capsys, tmp_path):
        path = tmp_path / "big.encg"
        path.write_text("encg 1\n6000 1\n0 1\n", encoding="utf-8")
        out_path = tmp_path / "big2.encg"
        code, out, _ = run(
            capsys, "apply", str(path), "translate-hidden", "--from", "0", "--to", "1",
            "-m", "1", "--out", str(out_path),
        )
        assert code == 0
        assert grab(out, "checked") == "shallow"


class TestExperiment:
    def test_preset_runs_write_csvs(self, capsys, tmp_path):
        out_dir = tmp_path / "exp"
        code, out, _ = run(
            capsys, "experiment", "--preset", "fig1", "--regions", "12",
            "--seed", "4", "--runs", "2", "--out-dir", str(out_dir),
        )
        assert code == 0
        assert (out_dir / "run_000.csv").exists()
        assert (out_dir / "run_001.csv").exists()
        assert out.count("run ") == 2
        first = (out_dir / "run_000.csv").read_text().splitlines()
        assert first[0] == "step,stddev,mpe,ce"
        initial_ce = float(first[1].split(",")[3])
        final_ce = float(first[-1].split(",")[3])
        assert final_ce < initial_ce

    def test_fig3_preset_keeps_mpe_constant(self, capsys, tmp_path):
        out_dir = tmp_path / "exp3"
        code, _, _ = run(
            capsys, "experiment", "--preset", "fig3", "--regions", "15",
            "--seed", "9", "--out-dir", str(out_dir),
        )
        assert code == 0
        rows = (out_dir / "run_000.csv").read_text().splitlines()[1:]
        assert len({row.split(",")[2] for row in rows}) == 1

    def test_reruns_are_byte_identical(self, capsys, tmp_path):
        args = ["experiment", "--preset", "fig4", "--regions", "10", "--seed", "2"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
        capsys.readouterr()
        assert (tmp_path / "a/run_000.csv").read_bytes() == (tmp_path / "b/run_000.csv").read_bytes()

    def test_explicit_flags_override_the_preset(self, capsys, tmp_path):
        out_dir = tmp_path / "exp4"
        code, out, _ = run(
            capsys, "experiment", "--preset", "fig1", "--regions", "5",
            "--hidden-min", "2", "--hidden-max", "2", "--target", "0",
            "--out-dir", str(out_dir),
        )
        assert code == 0
        assert grab(out.replace("run 0", "run0"), "run0").startswith("steps=8")

    def test_round_robin_policy_flag(self, capsys, tmp_path):
        out_dir = tmp_path / "rr"
        code, out, _ = run(
            capsys, "experiment", "--preset", "fig1", "--regions", "6",
            "--policy", "round-robin", "--seed", "1", "--out-dir", str(out_dir),
        )
        assert code == 0
        assert (out_dir / "run_000.csv").exists()

    def test_missing_mode_without_preset_exit_1(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "experiment", "--regions", "5", "--out-dir", str(tmp_path / "x"),
        )
        assert code == 1
        assert "missing" in err

    def test_invalid_bounds_exit_1(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "experiment", "--preset", "fig1", "--hidden-min", "9",
            "--hidden-max", "3", "--out-dir", str(tmp_path / "x"),
        )
        assert code == 1


class TestVerify:
    def test_passes_and_prints_counts(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--cases", "120", "--max-regions", "8",
            "--max-count", "6", "--seed", "3",
        )
        assert code == 0
        assert grab(out, "cases") == "120"
        assert "checked-application: 120 passed" in out
        assert "result: PASS" in out

    def test_single_case_is_repeatable(self, capsys):
        code1, out1, _ = run(capsys, "verify", "--cases", "1", "--seed", "42")
        code2, out2, _ = run(capsys, "verify", "--cases", "1", "--seed", "42")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_zero_cases_exit_1(self, capsys):
        code, _, err = run(capsys, "verify", "--cases", "0")
        assert code == 1

    def test_corrupted_prediction_exits_2_with_reproduction(self, capsys, monkeypatch):
        real = encgraph.transform.predict_delta

        def skewed(graph, transformation):
            report = real(graph, transformation)
            return DeltaReport(report.total + 1)

        # apply_checked resolves predict_delta at call time, so skewing it
        # simulates a buggy build; the harness must notice and exit 2.
        monkeypatch.setattr(encgraph.transform, "predict_delta", skewed)
        code, _, err = run(capsys, "verify", "--cases", "10", "--seed", "1")
        assert code == 2
        assert "mismatch" in err
        assert "case=" in err and "seed=" in err


class TestIngest:
    def test_manifest_to_graph_and_summary(self, capsys, tmp_path):
        manifest = tmp_path / "m.encn"
        manifest.write_text("encn 1\ncore a h\ncore b v\nutil c v\n", encoding="utf-8")
        out_path = tmp_path / "m.encg"
        code, out, _ = run(capsys, "ingest", str(manifest), "--out", str(out_path))
        assert code == 0
        assert read_graph(out_path.read_text()).regions == (
            read_graph("encg 1\n1 1\n0 1\n").regions
        )
        assert grab(out, "total-mpe") == "5"

    def test_empty_manifest(self, capsys, tmp_path):
        manifest = tmp_path / "m.encn"
        manifest.write_text("encn 1\n", encoding="utf-8")
        code, out, _ = run(capsys, "ingest", str(manifest), "--out", str(tmp_path / "m.encg"))
        assert code == 0
        assert grab(out, "configuration-efficiency") == "1.000000"

    def test_duplicate_node_exit_1(self, capsys, tmp_path):
        manifest = tmp_path / "m.encn"
        manifest.write_text("encn 1\ncore a h\ncore a v\n", encoding="utf-8")
        code, _, err = run(capsys, "ingest", str(manifest), "--out", str(tmp_path / "m.encg"))
        assert code == 1
        assert "duplicate" in err


class TestUsage:
    def test_unknown_command_exit_1(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1

    def test_missing_required_flag_exit_1(self, capsys):
        code, _, err = run(capsys, "gen", "--regions", "3")
        assert code == 1
