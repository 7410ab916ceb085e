import pytest

from hermfold.cli import build_parser, run
from hermfold.results_store import get_table1_rows


def test_parser_requires_a_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_unknown_subcommand_is_a_usage_error():
    assert run(["bogus"]) == 2


def test_points(capsys):
    assert run(["points", "--q", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "GF 2 2 1 1 1"
    assert len(lines) == 9


def test_code(capsys):
    assert run(["code", "--q", "2", "--r", "4"]) == 0
    assert "[8, 4, 4]" in capsys.readouterr().out


def test_code_export(tmp_path, capsys):
    path = tmp_path / "g.txt"
    assert run(["--format", "records", "code", "--q", "2", "--r", "2", "--export-matrix", str(path)]) == 0
    assert capsys.readouterr().out == path.read_text(encoding="utf-8")


def test_dual_check(capsys):
    assert run(["dual-check", "--q", "3"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "r=5 alpha=26 pass" in out


def test_fold(capsys):
    assert run(["fold", "--q", "2", "--r", "4", "--m", "2"]) == 0
    assert "fold commutes with dual: True" in capsys.readouterr().out


def test_fold_lists_chains_and_triple(capsys):
    assert run(["fold", "--q", "2", "--r", "4", "--m", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith("m=2: 4 chains")
    assert all(len(line.split()) == 2 for line in lines[1:5])
    assert "folded: [4, 2, ≥2]" in lines[5]


def test_fold_records(capsys):
    assert run(["--format", "records", "fold", "--q", "2", "--r", "4", "--m", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "4 2 1 2"
    assert len(lines) == 5
    assert sorted(int(i) for line in lines[1:] for i in line.split()) == list(range(8))


def test_fold_auto_automorphism(capsys):
    assert run(["fold", "--q", "2", "--r", "4", "--m", "2", "--delta", "auto", "--mu", "auto"]) == 0
    auto = capsys.readouterr().out
    assert run(["fold", "--q", "2", "--r", "4", "--m", "2"]) == 0
    assert capsys.readouterr().out == auto


def test_fold_rejects_non_integer_delta():
    assert run(["fold", "--q", "2", "--r", "4", "--m", "2", "--delta", "one", "--mu", "1"]) == 2


def test_fold_with_invalid_m():
    assert run(["fold", "--q", "2", "--r", "4", "--m", "3"]) == 2


def test_delta_without_mu():
    assert run(["fold", "--q", "2", "--r", "4", "--m", "2", "--delta", "1"]) == 2


def test_fqhc_small_instance(capsys):
    assert run(["fqhc", "--q", "2", "--r1", "4", "--r2", "6", "--m", "2"]) == 0
    out = capsys.readouterr().out
    assert "[[4, 1," in out
    assert "alphabet size q^(2m) = 16" in out
    assert "FAIL" not in out


def test_fqhc_records_are_deterministic(capsys):
    argv = ["--format", "records", "fqhc", "--q", "2", "--r1", "4", "--r2", "6", "--m", "2"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first == "2 2 4 1 1 1\n"


def test_fqhc_containment_failure():
    assert run(["fqhc", "--q", "2", "--r1", "2", "--r2", "2", "--m", "2"]) == 2


def test_table1_formula_row(capsys):
    assert run(["table1", "--q", "8", "--m", "2", "--level", "formula"]) == 0
    assert "[[256, 133, ≥48]]" in capsys.readouterr().out


def test_table1_shows_alphabet(capsys):
    assert run(["table1", "--q", "4", "--m", "2", "--level", "formula"]) == 0
    assert "256" in capsys.readouterr().out


def test_table1_unknown_row():
    assert run(["table1", "--q", "3", "--m", "3"]) == 2


def test_table1_store(tmp_path, capsys):
    url = f"sqlite:///{tmp_path / 'cli.db'}"
    assert run(["--store", url, "table1", "--q", "5", "--level", "formula"]) == 0
    assert list(get_table1_rows(url)["quantum"]) == ["[[25, 47/5, ≥6]]"]


def test_ea(capsys):
    assert run(["ea", "--q", "2", "--r1", "2", "--r2", "2", "--m", "2"]) == 0
    assert "case: general" in capsys.readouterr().out


def test_listdecode_records(capsys):
    argv = ["--format", "records", "listdecode", "--q", "2", "--r", "4", "--m", "2", "--radius", "0", "1", "--mode", "coset"]
    assert run(argv) == 0
    assert capsys.readouterr().out.splitlines() == ["0 1 coset", "1 4 coset"]


def test_listdecode_tau(capsys):
    argv = ["--format", "records", "listdecode", "--q", "2", "--r", "4", "--m", "2", "--tau", "1/2", "--mode", "coset"]
    assert run(argv) == 0
    assert capsys.readouterr().out.splitlines() == ["2 19 coset"]


def test_listdecode_budget_exceeded():
    argv = ["--distance-budget", "100", "listdecode", "--q", "2", "--r", "4", "--m", "2", "--radius", "1"]
    assert run(argv) == 2


def test_qdecode_all_syndromes(capsys):
    assert run(["qdecode", "--q", "2", "--r1", "4", "--r2", "6", "--m", "2", "--radius", "1", "--all-syndromes"]) == 0
    assert "largest quantum list" in capsys.readouterr().out


def test_qdecode_trials_records(capsys):
    argv = ["--format", "records", "qdecode", "--q", "2", "--r1", "4", "--r2", "6", "--m", "2", "--radius", "1", "--trials", "3", "--seed", "5"]
    assert run(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split()[0] for line in lines] == ["5", "6", "7"]
    assert all(line.endswith(" 1") for line in lines)


def test_nonpositive_budget_is_rejected():
    assert run(["--distance-budget", "0", "points", "--q", "2"]) == 2


def test_negative_seed_is_rejected():
    argv = ["qdecode", "--q", "2", "--r1", "4", "--r2", "6", "--m", "2", "--radius", "1", "--seed", "-1"]
    assert run(argv) == 2


@pytest.mark.slow
def test_verify_all(capsys):
    assert run(["verify-all"]) == 0
    assert "FAIL" not in capsys.readouterr().out
