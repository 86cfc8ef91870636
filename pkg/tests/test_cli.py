from pathlib import Path

import pytest

from ffiter import build_code, iterate
from ffiter.cli import main
from ffiter.codec import describe_code
from ffiter.experiments import emit_csv, run_experiment
from ffiter.io import format_code, format_table, read_code, read_table
from ffiter.generators import random_function, staircase_function, chain_function

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_matches_library(tmp_path, capsys):
    out_path = tmp_path / "c.ffc"
    status, out, _ = run(capsys, "build", "--input", DATA / "paper_table.txt", "--output", out_path, "--strategy", "ordered")
    assert status == 0
    assert "components 3" in out and "bound 2" in out
    assert out_path.read_text().splitlines()[3] == "0 4 6 7"
    assert out_path.read_text() == format_code(build_code(read_table(DATA / "paper_table.txt"), "ordered"))


def test_build_cycle_rejects_function(tmp_path, capsys):
    status, _, err = run(capsys, "build", "--input", DATA / "paper_table.txt", "--output", tmp_path / "c", "--strategy", "cycle")
    assert status == 2 and err.startswith("NotInjective")


def test_build_greedy_chain(tmp_path, capsys):
    (tmp_path / "chain.txt").write_text(format_table(chain_function(10)))
    status, out, _ = run(capsys, "build", "--input", tmp_path / "chain.txt", "--output", tmp_path / "c")
    assert status == 0 and "components 1" in out


def test_eval_examples(capsys):
    status, out, _ = run(capsys, "eval", "--code", DATA / "paper_ordered.ffc", "--x", 4, "--m", 10)
    code = read_code(DATA / "paper_ordered.ffc")
    res = iterate(code, 4, 10)
    assert status == 0 and out == f"{res.value} {res.descents} {res.table_reads}\n"
    status, out, _ = run(capsys, "eval", "--code", DATA / "paper_ordered.ffc", "--x", 3, "--m", 0)
    assert out.split()[:2] == ["3", "0"]
    status, out, err = run(
        capsys, "eval", "--code", DATA / "staircase10_greedy.ffc", "--x", 9, "--m", 3,
        "--check", DATA / "staircase10.txt", "--trace",
    )
    assert status == 0
    assert out.split()[:2] == ["3", "3"]
    assert err.count("descent") == 3


def test_eval_check_mismatch(tmp_path, capsys):
    (tmp_path / "other.txt").write_text("7\n0 0 0 0 0 0 0\n")
    status, _, err = run(capsys, "eval", "--code", DATA / "paper_ordered.ffc", "--x", 6, "--m", 5, "--check", tmp_path / "other.txt")
    assert status == 4 and "CheckMismatch" in err


def test_eval_errors(tmp_path, capsys):
    status, _, err = run(capsys, "eval", "--code", DATA / "paper_ordered.ffc", "--x", 7, "--m", 1)
    assert status == 2 and "XOutOfRange" in err
    status, _, _ = run(capsys, "eval", "--code", tmp_path / "missing.ffc", "--x", 0, "--m", 1)
    assert status == 3
    (tmp_path / "bad.ffc").write_text("hello\n")
    status, _, err = run(capsys, "eval", "--code", tmp_path / "bad.ffc", "--x", 0, "--m", 1)
    assert status == 2 and "BadMagic" in err


@pytest.mark.parametrize("family", ["random", "perm", "chain", "antichain", "staircase"])
def test_gen_families(tmp_path, capsys, family):
    path = tmp_path / "t.txt"
    assert run(capsys, "gen", "--family", family, "--n", 12, "--seed", 5, "--output", path)[0] == 0
    t = read_table(path)
    assert t.n == 12
    if family == "random":
        assert t == random_function(12, 5)
    if family == "staircase":
        assert t == staircase_function(12)[0]


def test_gen_to_stdout(capsys):
    status, out, _ = run(capsys, "gen", "--family", "chain", "--n", 3)
    assert status == 0 and out == "3\n0 0 1\n"


def test_stats_matches_library(tmp_path, capsys):
    csv_path = tmp_path / "s.csv"
    status, out, _ = run(capsys, "stats", "--min-exp", 2, "--max-exp", 6, "--samples", 10, "--seed", 3, "--out", csv_path)
    assert status == 0 and len(out.splitlines()) == 5
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 6
    lib = tmp_path / "lib.csv"
    emit_csv(run_experiment(2, 6, 10, seed=3), lib)
    strip = lambda ls: [line.rsplit(",", 1)[0] for line in ls]
    assert strip(lines) == strip(lib.read_text().splitlines())
    for line in lines[1:]:
        fields = line.split(",")
        assert int(fields[3]) <= int(fields[7])


def test_stats_permutations_to_stdout(capsys):
    status, out, err = run(capsys, "stats", "--min-exp", 2, "--max-exp", 4, "--samples", 3, "--strategy", "cycle")
    assert status == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 3 and all(r.split(",")[3:5] == ["0", "0.000000"] for r in rows)
    assert len(err.splitlines()) == 3


def test_inspect(capsys):
    status, out, _ = run(capsys, "inspect", "--code", DATA / "staircase10_greedy.ffc")
    info = describe_code(read_code(DATA / "staircase10_greedy.ffc"))
    assert status == 0
    assert "max_depth 3" in out and f"components {info['components']}" in out
    assert "depths 0 1 2 3" in out
