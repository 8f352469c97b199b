import json
import math

import numpy as np
import pytest

from negtype import cli, io, space


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gap_star3(capsys):
    code, out, _ = run(capsys, "gap", "--tree", "star:3", "--p", "1")
    assert code == 0
    assert "0.333333333" in out
    assert "side_a" in out and "side_b" in out


def test_check_discrete4(capsys):
    code, out, _ = run(capsys, "check", "--gen", "discrete:4", "--q", "3")
    assert code == 0
    assert "STRICT" in out


def test_sup_from_matrix_file(tmp_path, capsys):
    path = tmp_path / "p3.csv"
    path.write_text(io.write_matrix_csv(space.gen_path(3, 1.0)))
    code, out, _ = run(capsys, "sup", "--matrix", str(path))
    assert code == 0
    line = next(ln for ln in out.splitlines() if ln.startswith("p_sup"))
    assert float(line.split()[1]) == pytest.approx(2.0, abs=1e-6)


def test_sup_infinite_wording(capsys):
    code, out, _ = run(capsys, "sup", "--gen", "discrete:4")
    assert code == 0
    assert "infinity (search capped at p_max)" in out


def test_json_roundtrip_is_canonical(capsys):
    for argv in (
        ["check", "--gen", "discrete:4", "--q", "3", "--json"],
        ["sup", "--gen", "discrete:4", "--json"],
        ["gap", "--gen", "star:3", "--p", "1", "--json"],
        ["zeta", "--gen", "path:3", "--p", "1", "--json"],
        ["scan", "--gen", "path:3", "--grid", "0.5:2.5:0.5", "--json"],
        ["gen", "--gen", "random:4,7", "--json"],
        ["tree-bound", "--tree", "star:3", "--json"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0, argv
        assert json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n" == out, argv


def test_table_and_json_agree_to_nine_digits(capsys):
    _, table, _ = run(capsys, "gap", "--gen", "star:4", "--p", "1.2")
    _, js, _ = run(capsys, "gap", "--gen", "star:4", "--p", "1.2", "--json")
    gamma = json.loads(js)["gamma"]
    line = next(ln for ln in table.splitlines() if ln.startswith("gamma"))
    assert line.split()[1] == format(gamma, ".9g")


def test_scan_table_pattern(capsys):
    code, out, _ = run(capsys, "scan", "--gen", "path:3", "--grid", "0.5:2.5:0.5")
    assert code == 0
    statuses = [ln.split()[1] for ln in out.splitlines()]
    assert statuses == ["STRICT", "STRICT", "STRICT", "BOUNDARY", "FAIL"]


def test_scan_anomaly_exits_3(capsys):
    code, _, err = run(capsys, "scan", "--gen", "path:3", "--grid", "1:2:1", "--tol-eig", "1e6")
    assert code == 3
    assert "numeric anomaly" in err


def test_gen_csv_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--gen", "enflo:1.5,4,[2.0]")
    assert code == 0
    path = tmp_path / "x.csv"
    path.write_text(out)
    X = io.read_matrix_csv(str(path))
    assert X.n == 8
    assert X.labels[0] == "Y1.0"
    assert np.array_equal(X.dist, space.gen_enflo_truncation(1.5, [2.0], 4).dist)


def test_gen_json_mode(capsys):
    code, out, _ = run(capsys, "gen", "--gen", "circle:0;1.57;3.14", "--json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["dist"]) == 3


def test_tree_flag_accepts_files_and_specs(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("0 1 1.0\n1 2 1.0\n")
    code, out, _ = run(capsys, "tree-bound", "--tree", str(path))
    assert code == 0
    assert float(out.split()[1]) == pytest.approx(2.0, abs=1e-12)
    code, out2, _ = run(capsys, "tree-bound", "--tree", "path:3")
    assert code == 0
    assert out2 == out


def test_input_errors_exit_2(capsys):
    cases = [
        ["check", "--q", "1"],  # no source
        ["check", "--gen", "discrete:4", "--matrix", "x.csv", "--q", "1"],  # two sources
        ["check", "--gen", "discrete:4"],  # missing exponent
        ["check", "--gen", "bogus:4", "--q", "1"],
        ["check", "--gen", "discrete:one", "--q", "1"],
        ["check", "--matrix", "/no/such/file.csv", "--q", "1"],
        ["check", "--tree", "/no/such/file.txt", "--q", "1"],
        ["gap", "--gen", "discrete:1", "--p", "1"],
        ["scan", "--gen", "path:3"],  # missing grid
        ["scan", "--gen", "path:3", "--grid", "2:1:0.5"],
        ["tree-bound", "--gen", "discrete:4"],  # not a tree source
        ["tree-bound", "--tree", "star:3,2.0"],  # non-unit weights
    ]
    for argv in cases:
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        assert err.strip(), argv


def test_p_and_q_are_aliases(capsys):
    _, a, _ = run(capsys, "check", "--gen", "path:3", "--p", "1.5")
    _, b, _ = run(capsys, "check", "--gen", "path:3", "--q", "1.5")
    assert a == b


def test_tolerance_overrides_are_applied(capsys):
    # A p_max below the true supremal exponent turns the report into infinity.
    code, out, _ = run(capsys, "sup", "--gen", "path:3", "--p-max", "1.5")
    assert code == 0
    assert "infinity" in out


def test_grid_parsing_is_inclusive(capsys):
    _, out, _ = run(capsys, "scan", "--gen", "discrete:3", "--grid", "1:2:0.25", "--json")
    grid = [row["q"] for row in json.loads(out)["grid"]]
    assert grid == pytest.approx([1.0, 1.25, 1.5, 1.75, 2.0])


def test_generator_specs():
    X, edges = cli.parse_generator("star:3,2.0")
    assert X.n == 4 and edges == [(0, 1, 2.0), (0, 2, 2.0), (0, 3, 2.0)]
    X, edges = cli.parse_generator("path:4")
    assert X.n == 4 and len(edges) == 3
    X, _ = cli.parse_generator("enflo:1.5,4,[1.7;1.6]")
    assert X.n == 16
    X, _ = cli.parse_generator("random:5,3,0.5,4.0")
    off = X.dist[~np.eye(5, dtype=bool)]
    assert ((off >= 0.5) & (off <= 4.0)).all()
    X, _ = cli.parse_generator("circle:0;3.14159")
    assert X.n == 2


def test_verify_cli_smoke(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "0", "--samples", "2000")
    assert code == 0
    assert "0 failed" in out
    last = out.strip().splitlines()[-1]
    assert last.endswith("passed, 0 failed")
