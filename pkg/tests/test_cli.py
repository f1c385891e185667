# tests/test_cli.py
import io
import json

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from rootiso import cli, database, models
from rootiso.services.errors import InvariantViolation
from rootiso.services.oracle import CrossCheck


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_isolate_human(capsys):
    code, out, _ = run(["isolate", "--poly", "x^2 + x - 2"], capsys)
    assert code == 0
    assert out == "[-2/1, -2/1]\n[1/1, 1/1]\n"


def test_isolate_json_from_coeffs(capsys):
    code, out, _ = run(["isolate", "--format", "coeffs", "--poly", "-2 0 1", "--out", "json"], capsys)
    assert code == 0
    items = json.loads(out)
    assert [item["kind"] for item in items] == ["open", "open"]
    assert all(item["lo"]["den"] > 0 for item in items)


def test_isolate_reads_file_and_stdin(tmp_path, monkeypatch, capsys):
    path = tmp_path / "p.txt"
    path.write_text("x^3 - x\n", encoding="utf-8")
    code, from_file, _ = run(["isolate", "--in", str(path)], capsys)
    assert code == 0

    monkeypatch.setattr("sys.stdin", io.StringIO("x^3 - x"))
    code, from_stdin, _ = run(["isolate"], capsys)
    assert code == 0
    assert from_file == from_stdin
    assert "[0/1, 0/1]" in from_stdin


def test_isolate_no_roots_prints_nothing(capsys):
    code, out, _ = run(["isolate", "--poly", "x^2 + 1"], capsys)
    assert code == 0
    assert out == ""


def test_isolate_stats_go_to_stderr(capsys):
    code, out, err = run(["isolate", "--poly", "(x-1)*(x-2)*(x-3)", "--stats", "--no-subst"], capsys)
    assert code == 0
    assert "nodes:" in err
    assert "nodes:" not in out


def test_parse_error_exit_code(capsys):
    code, out, err = run(["isolate", "--poly", "2x + 1"], capsys)
    assert code == 1
    assert out == ""
    assert "position 1" in err


def test_missing_input_file(tmp_path, capsys):
    code, _, err = run(["isolate", "--in", str(tmp_path / "nope.txt")], capsys)
    assert code == 1
    assert "rootiso: error" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["isolate", "--out", "xml", "--poly", "x"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1


def test_invariant_violation_exit_code(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise InvariantViolation("budget")

    monkeypatch.setattr(cli, "isolate_with_stats", broken)
    code, _, err = run(["isolate", "--poly", "x - 1"], capsys)
    assert code == 2
    assert "budget" in err


def test_bound(capsys):
    assert run(["bound", "--poly", "x^2 + x - 2"], capsys)[:2] == (0, "1/1\n")
    assert run(["bound", "--alg", "asv", "--poly", "x^2 + x - 2"], capsys)[:2] == (0, "2/1\n")
    assert run(["bound", "--alg", "cauchy", "--poly", "x^2 - 2"], capsys)[:2] == (0, "3/1\n")
    assert run(["bound", "--lower", "--poly", "x^2 - x - 2"], capsys)[:2] == (0, "2/1\n")
    assert run(["bound", "--lower", "--poly", "4*x - 1"], capsys)[:2] == (0, "uncertified\n")
    assert run(["bound", "--poly", "x^2 + 1"], capsys)[0] == 1


def test_bench_csv_sweep(capsys):
    code, out, _ = run(["bench", "--family", "W", "--n", "3,4", "--no-timing"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "family,n,b,r,seed,trial,wall_seconds,root_count,verified",
        "W,3,,,,0,,3,true",
        "W,4,,,,0,,4,true",
    ]


def test_bench_files_are_byte_identical(tmp_path, capsys):
    outputs = []
    for i in range(2):
        csv_path, json_path = tmp_path / f"{i}.csv", tmp_path / f"{i}.json"
        argv = [
            "bench", "--family", "R", "--n", "15", "--b", "1000", "--r", "0.5",
            "--seed", "42", "--trials", "3", "--no-timing",
            "--csv", str(csv_path), "--json", str(json_path),
        ]
        assert run(argv, capsys)[0] == 0
        outputs.append((csv_path.read_bytes(), json_path.read_bytes()))
    assert outputs[0] == outputs[1]
    assert len(json.loads(outputs[0][1])) == 3


def test_bench_reports_mean_for_random_trials(capsys):
    code, out, err = run(
        ["bench", "--family", "R", "--n", "10", "--trials", "3", "--seed", "1", "--r", "0.5"], capsys,
    )
    assert code == 0
    assert len(out.splitlines()) == 4
    means = [line for line in err.splitlines() if line.startswith("mean_wall_seconds=")]
    assert len(means) == 1
    assert means[0].endswith("family=R n=10 trials=3")
    assert float(means[0].split()[0].split("=")[1]) >= 0

    _, _, err = run(["bench", "--family", "W", "--n", "4", "--trials", "2"], capsys)
    assert "mean_wall_seconds=" not in err


def test_bench_rejects_bad_spec(capsys):
    code, _, err = run(["bench", "--family", "R", "--n", "5", "--r", "1.5"], capsys)
    assert code == 1
    assert "rootiso: error" in err


def test_bench_persist(monkeypatch, capsys):
    engine = create_engine(
        "sqlite://", connect_args={"check_same_thread": False}, poolclass=StaticPool,
    )
    Session = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    monkeypatch.setattr(database, "engine", engine)
    monkeypatch.setattr(database, "SessionLocal", Session)

    code, _, err = run(["bench", "--family", "T", "--n", "6", "--trials", "2", "--persist"], capsys)
    assert code == 0
    assert "run_id=1" in err

    db = Session()
    try:
        run_row = db.query(models.BenchRun).one()
        assert run_row.family == "T"
        assert [rec.trial for rec in run_row.records] == [0, 1]
        assert all(rec.root_count == 6 for rec in run_row.records)
    finally:
        db.close()


def test_oracle_check(capsys):
    code, out, _ = run(["oracle-check", "--poly", "x^2 - 2"], capsys)
    assert code == 0
    assert out == "vas=2 oracle=2 match=yes\n"


def test_oracle_check_mismatch_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "cross_check", lambda P, options=None: CrossCheck(vas_count=1, oracle_count=2))
    code, out, _ = run(["oracle-check", "--poly", "x^2 - 2"], capsys)
    assert code == 2
    assert "match=no" in out


def test_oracle_check_zero_root(capsys):
    code, out, _ = run(["oracle-check", "--poly", "x^3 - x^2 - x"], capsys)
    assert code == 0
    assert out == "vas=3 oracle=3 match=yes\n"
