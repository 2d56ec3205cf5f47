import json

import numpy as np
import pytest

from senslab.cli import main
from senslab.core import Point, restrict_to_ball
from senslab.families import dictator, random_dt, tribes
from senslab.io import read_truth_table, write_ball_advice, write_truth_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    reports = [json.loads(line) for line in out.splitlines() if line]
    return code, reports


def test_gen_measure_roundtrip(tmp_path, capsys):
    path = str(tmp_path / "f.tt")
    code, reports = run(capsys, "gen", "--family", "tribes", "--s", "2", "--n", "6", "--out", path)
    assert code == 0 and reports[0]["ok"]
    assert read_truth_table(path) == tribes(2, 6)

    code, reports = run(capsys, "measure", "--in", path)
    assert code == 0
    out = reports[0]["outputs"]
    assert (out["s"], out["deg"], out["deg2"]) == (3, 6, 6)
    assert out["mu1"] == "37/64"


def test_extend_cli(tmp_path, capsys):
    f = random_dt(6, 2, seed=8)
    ball = str(tmp_path / "f.ball")
    out_tt = str(tmp_path / "ext.tt")
    write_ball_advice(restrict_to_ball(f, Point(6, 0), 6), ball)
    code, reports = run(capsys, "extend", "--rule", "maj", "--advice", ball, "--out", out_tt)
    assert code == 0
    assert reports[0]["outputs"]["status"] == "extended"
    assert read_truth_table(out_tt) == f


def test_extend_tie_exits_one(tmp_path, capsys):
    ball = tmp_path / "tie.ball"
    ball.write_text("n=2 center=00 radius=1\n00 0\n10 0\n01 1\n")
    code, reports = run(capsys, "extend", "--rule", "maj", "--advice", str(ball))
    assert code == 1
    assert reports[0]["outputs"] == {"failed_point": "11", "reason": "tie", "status": "failed"}


def test_eval_cli_matches_truth(tmp_path, capsys):
    f = dictator(8)
    ball = str(tmp_path / "f.ball")
    write_ball_advice(restrict_to_ball(f, Point(8, 0), 8), ball)
    for algo in ("bottom-up", "top-down", "parallel"):
        code, reports = run(
            capsys, "eval", "--algo", algo, "--advice", ball, "--s", "1", "--x", "10000001"
        )
        assert code == 0
        assert reports[0]["outputs"]["value"] == 1


def test_ns_cli_exact_strings(tmp_path, capsys):
    path = str(tmp_path / "d.tt")
    write_truth_table(dictator(4), path)
    code, reports = run(capsys, "ns", "--in", path, "--delta", "1/20", "--x", "1000")
    assert code == 0
    assert reports[0]["outputs"]["value"] == "1/20"
    code, reports = run(capsys, "ns", "--in", path, "--delta", "1/20")
    assert reports[0]["outputs"]["average"] == "1/20"


def test_lambda_cli(tmp_path, capsys):
    path = str(tmp_path / "s.tt")
    write_truth_table(dictator(6), path)
    code, reports = run(capsys, "lambda", "--in", path, "--delta", "1/20", "--theta", "2/5")
    assert code == 0
    out = reports[0]["outputs"]
    assert out["mu_S"] == "1/2" and out["expansion_holds"]


def test_correct_global_cli(tmp_path, capsys):
    f = random_dt(8, 1, seed=3)
    corrupted = f.values.copy()
    corrupted[17] ^= 1
    from senslab.core import TruthTable

    bad, truth_p, out_p = (str(tmp_path / x) for x in ("bad.tt", "truth.tt", "fixed.tt"))
    write_truth_table(TruthTable(8, corrupted), bad)
    write_truth_table(f, truth_p)
    code, reports = run(
        capsys, "correct", "--mode", "global", "--in", bad, "--s", "1",
        "--delta", "1/8", "--truth", truth_p, "--out", out_p,
    )
    assert code == 0
    assert reports[0]["outputs"]["recovered"] is True
    assert read_truth_table(out_p) == f


def test_correct_local_cli(tmp_path, capsys):
    path = str(tmp_path / "f.tt")
    write_truth_table(dictator(6), path)
    code, reports = run(
        capsys, "correct", "--mode", "local", "--in", path, "--s", "1",
        "--x", "111111", "--k", "2", "--seed", "4",
    )
    assert code == 0
    assert reports[0]["outputs"] == {"queries": 49, "value": 1}
    assert reports[0]["seed"] == 4


def test_correct_local_refuses_huge_default_k(tmp_path, capsys):
    path = str(tmp_path / "f.tt")
    write_truth_table(dictator(12), path)
    code, _ = run(capsys, "correct", "--mode", "local", "--in", path, "--s", "1", "--x", "0" * 12)
    assert code == 2


def test_enumerate_cli(capsys):
    code, reports = run(capsys, "enumerate", "--n", "3")
    assert code == 0
    assert reports[0]["outputs"]["counts"] == [2, 8, 118, 256]
    code, reports = run(capsys, "enumerate", "--n", "3", "--s", "1")
    assert reports[0]["outputs"]["count"] == 8


def test_interpolate_cli_deterministic(capsys):
    args = ["interpolate", "--n", "3", "--s", "1", "--trials", "10", "--seed", "6"]
    code1, _ = run(capsys, *args)
    out1 = main(args.copy())
    first = capsys.readouterr().out
    main(args.copy())
    second = capsys.readouterr().out
    assert code1 == 0 and out1 == 0
    assert first == second  # byte-identical reports for identical seeds


def test_verify_suite_cli(capsys):
    code, reports = run(capsys, "verify", "--suite", "counting")
    assert code == 0
    assert [r["parameters"]["criterion"] for r in reports] == [12, 13]
    assert all(r["ok"] for r in reports)


def test_verify_ball_small_n(capsys):
    code, reports = run(capsys, "verify", "--suite", "ball", "--n", "3")
    assert code == 0 and reports[0]["outputs"]["ok"]


def test_bench_checksum_stable(capsys):
    code1, rep1 = run(capsys, "bench", "--task", "transforms", "--n", "8", "--seed", "2")
    code2, rep2 = run(capsys, "bench", "--task", "transforms", "--n", "8", "--seed", "2")
    assert code1 == code2 == 0
    assert rep1[0]["outputs"]["checksum"] == rep2[0]["outputs"]["checksum"]


def test_bad_usage_exits_two(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["gen", "--family", "nonsense", "--n", "4", "--out", str(tmp_path / "x.tt")])
    assert e.value.code == 2
    code, _ = run(capsys, "measure", "--in", str(tmp_path / "missing.tt"))
    assert code == 2
    bad = tmp_path / "bad.tt"
    bad.write_text("n=2\n01\n")
    code, _ = run(capsys, "measure", "--in", str(bad))
    assert code == 2


def test_seed_echoed_in_reports(tmp_path, capsys):
    path = str(tmp_path / "r.tt")
    code, reports = run(
        capsys, "gen", "--family", "random", "--n", "5", "--seed", "77", "--out", path
    )
    assert code == 0 and reports[0]["seed"] == 77
