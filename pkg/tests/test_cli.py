import json

from cornerperc import read_result
from cornerperc.cli import main


def test_escape_json_schema(tmp_path):
    out = tmp_path / "escape.json"
    rc = main(
        [
            "escape",
            "--p", "0.5", "--q", "0.6",
            "--trials", "50",
            "--radius", "100",
            "--seed", "7",
            "--format", "json",
            "--out", str(out),
        ]
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert set(doc) >= {"estimator", "estimate", "ci95", "trials", "config"}
    assert doc["estimator"] == "escape_probability"
    assert doc["trials"] == 50
    assert doc["config"]["p"] == 0.5 and doc["config"]["q"] == 0.6
    assert doc["config"]["seed_base"] == 7


def test_slope_rejects_symmetric_point(capsys):
    rc = main(["slope", "--p", "0.5", "--q", "0.5"])
    assert rc == 2
    assert "(1/2, 1/2)" in capsys.readouterr().err


def test_unknown_flag_exits_two():
    assert main(["escape", "--bogus"]) == 2


def test_unknown_command_exits_two():
    assert main(["frobnicate"]) == 2


def test_parameter_errors_exit_two():
    assert main(["escape", "--epsilon", "-1"]) == 2
    assert main(["levels", "--p", "0.5", "--q", "0.5"]) == 2
    assert main(["render", "--window", "9999"]) == 2


def test_render_deterministic(tmp_path):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    args = ["render", "--p", "0.9", "--q", "0.9", "--window", "32", "--seed", "1"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().startswith(b"P6\n65 65\n255\n")


def test_render_smallest_window(tmp_path):
    out = tmp_path / "tiny.ppm"
    assert main(["render", "--window", "1", "--seed", "3", "--out", str(out)]) == 0
    data = out.read_bytes()
    assert data.startswith(b"P6\n3 3\n255\n")
    assert len(data) == len(b"P6\n3 3\n255\n") + 27


def test_trace_summary(tmp_path):
    out = tmp_path / "trace.json"
    rc = main(
        [
            "trace",
            "--p", "0.7", "--q", "0.6",
            "--seed", "3",
            "--radius", "500",
            "--max-steps", "100000",
            "--out", str(out),
        ]
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["status"] in ("cycle", "escaped", "truncated")
    assert doc["level"] in (0, -1)
    assert doc["start"] == [0, 0]


def test_trace_custom_start(tmp_path):
    out = tmp_path / "trace.json"
    rc = main(
        ["trace", "--p", "0.5", "--q", "0.5", "--seed", "0", "--start", "5", "-3",
         "--radius", "200", "--out", str(out)]
    )
    assert rc == 0
    assert json.loads(out.read_text())["start"] == [5, -3]


def test_csv_output_round_trips(tmp_path):
    out = tmp_path / "signs.csv"
    rc = main(
        ["signs", "--p", "0.7", "--q", "0.6", "--trials", "200", "--seed", "0",
         "--format", "csv", "--out", str(out)]
    )
    assert rc == 0
    doc = read_result(out.read_text(), "csv")
    assert doc["estimator"] == "sign_mean_experiment"
    assert doc["config"]["format"] == "csv"
    assert abs(doc["estimate"]) <= 1.0


def test_markov_generator_flags(tmp_path):
    out = tmp_path / "esc.json"
    rc = main(
        ["escape", "--gen", "markov", "--flip-up", "0.3", "--flip-down", "0.4",
         "--p", "0.5", "--q", "0.6", "--trials", "20", "--radius", "50", "--out", str(out)]
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["gen"]["kind"] == "markov"
    assert doc["config"]["gen"]["vertical"]["flip_up"] == 0.3


def test_assert_mode_passes(tmp_path):
    assert main(
        ["signs", "--p", "0.7", "--q", "0.6", "--trials", "2000", "--seed", "0",
         "--assert", "--out", str(tmp_path / "s.json")]
    ) == 0
    assert main(
        ["loops", "--p", "0.5", "--q", "0.5", "--seed", "0", "--window", "40",
         "--radius", "2000", "--max-steps", "200000", "--assert",
         "--out", str(tmp_path / "l.json")]
    ) == 0
    assert main(
        ["ergodic", "--p", "0.5", "--q", "0.7", "--seed", "0", "--window", "150",
         "--assert", "--out", str(tmp_path / "e.json")]
    ) == 0


def test_assert_mode_failure_exits_one(tmp_path):
    # no escapers within ten steps: the slope check cannot hold
    rc = main(
        ["slope", "--p", "0.9", "--q", "0.9", "--trials", "5", "--max-steps", "10",
         "--radius", "1000000", "--assert", "--out", str(tmp_path / "x.json")]
    )
    assert rc == 1


def test_stdout_output(capsysbinary):
    rc = main(["escape", "--p", "0.5", "--q", "0.6", "--trials", "10", "--radius", "50"])
    assert rc == 0
    doc = json.loads(capsysbinary.readouterr().out)
    assert doc["trials"] == 10
