import json

import pytest

from fdfalearn.automata import ba_equivalence
from fdfalearn.cli import (EXIT_ABORT, EXIT_OK, EXIT_PARSE, EXIT_TIMEOUT, RunConfig, bench_report,
                           config_matrix, main, random_targets, run_bench)
from fdfalearn.errors import InputError
from fdfalearn.formats import parse_ba, print_fdfa

from conftest import TARGETS, ends_in_a_fdfa, target


@pytest.fixture
def files(tmp_path):
    for name, text in TARGETS.items():
        safe = name.replace("^", "").replace("*", "star").replace("+", "_").replace("(", "").replace(")", "")
        (tmp_path / f"{safe}.ba").write_text(text)
    (tmp_path / "ends_in_a.fdfa").write_text(print_fdfa(ends_in_a_fdfa()))
    (tmp_path / "bad.ba").write_text("a,[0]->[1]\n")
    return tmp_path


def test_learn_writes_ba_and_stats(files):
    out, stats = files / "out.ba", files / "stats.txt"
    code = main(["learn", "--target", str(files / "aw_bw.ba"), "--out", str(out), "--stats", str(stats),
                 "--dot", str(files / "out.dot")])
    assert code == EXIT_OK
    assert ba_equivalence(parse_ba(out.read_text(), ("a", "b")), target("a^w+b^w")) is None
    text = stats.read_text()
    for key in ("status = ok", "states =", "transitions =", "mq =", "eq =", "time_eq =", "time_total =", "trace ="):
        assert key in text
    data = json.loads(stats.with_suffix(".json").read_text())
    assert data["eq"] == len(data["trace"]) >= 1
    assert (files / "out.dot").read_text().startswith("digraph")


def test_learn_over_succeeds_or_aborts(files):
    code = main(["learn", "--target", str(files / "aw_bw.ba"), "--learner", "table", "--acceptance", "syntactic",
                 "--approx", "over", "--out", str(files / "o.ba"), "--stats", str(files / "o.txt")])
    assert code in (EXIT_OK, EXIT_ABORT)


def test_learn_timeout_exit_code(files):
    code = main(["learn", "--target", str(files / "aw_bw.ba"), "--timeout", "1e-9",
                 "--stats", str(files / "t.txt")])
    assert code == EXIT_TIMEOUT
    assert "status = timeout" in (files / "t.txt").read_text()


def test_parse_error_exit_code(files, capsys):
    assert main(["learn", "--target", str(files / "bad.ba")]) == EXIT_PARSE
    assert main(["learn", "--target", str(files / "missing.ba")]) == EXIT_PARSE
    assert "error" in capsys.readouterr().err


def test_convert_and_member(files, capsys):
    under, over = files / "under.ba", files / "over.ba"
    assert main(["convert", str(files / "ends_in_a.fdfa"), "--approx", "under", "--out", str(under)]) == EXIT_OK
    assert main(["convert", str(files / "ends_in_a.fdfa"), "--approx", "over", "--out", str(over)]) == EXIT_OK
    capsys.readouterr()
    main(["member", str(under), "$b"])
    main(["member", str(over), "$b"])
    main(["member", str(under), "$ba"])
    assert capsys.readouterr().out.split() == ["false", "true", "true"]


def test_equiv(files, capsys):
    a_only = files / "a.ba"
    a_only.write_text("[0]\na,[0]->[0]\n[0]\n")
    main(["equiv", str(files / "aw_bw.ba"), str(files / "aw_bw.ba")])
    assert capsys.readouterr().out.strip() == "equal"
    main(["equiv", str(a_only), str(files / "aw_bw.ba")])
    assert capsys.readouterr().out.strip() == "$b"


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(timeout=0)
    with pytest.raises(InputError):
        RunConfig(learner="lstar")


def test_random_targets_reproducible():
    assert random_targets(5, 3) == random_targets(5, 3)
    assert random_targets(5, 3) != random_targets(5, 4)


def test_bench_matrix_and_report_shape():
    results = run_bench(random_targets(2, 1, 3), ("a", "b"), timeout=30)
    assert len(results) == 2 * len(config_matrix()) == 24
    report = bench_report(results, timing=False)
    lines = report.splitlines()
    assert lines[0] == "# targets = 2"
    assert lines[1].split() == ["Struct", "Acc", "Approx", "#Unsolved", "#Abort", "#St", "#Tr", "#MQ", "#EQ"]
    assert len(lines) == 2 + 12


def test_bench_empty_corpus(tmp_path, capsys):
    (tmp_path / "corpus").mkdir()
    assert main(["bench", "--corpus", str(tmp_path / "corpus"), "--no-timing"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# targets = 0")
    assert all(line.split()[3:] == ["0"] * 6 for line in out.splitlines()[2:])


def test_bench_byte_identical(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    args = ["bench", "--random", "3", "--seed", "7", "--max-states", "3", "--no-timing"]
    assert main(args + ["--out", str(a), "--stats", str(tmp_path / "a.json")]) == EXIT_OK
    assert main(args + ["--out", str(b), "--jobs", "2", "--stats", str(tmp_path / "b.json")]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
