"""CLI subcommands, exit statuses, and dispatch routing."""

import json

import coalition_bribery.cli as cli
from coalition_bribery.core import ScoringRule
from coalition_bribery.costs import SolveOutcome
from coalition_bribery.dispatch import (
    BORDA_DP,
    ORACLE,
    PLURALITY_DP,
    PLURALITY_FLOW,
    dispatch,
)
from coalition_bribery.generators import Variant, random_instance
from coalition_bribery.instance_io import serialize_instance
from coalition_bribery.reductions import ExactCover34Instance, reduce_x3c_to_borda_unit_cb
from coalition_bribery.sample_instances import (
    three_party_dollar_cbp,
    three_party_unit_cb,
)

EXPECTED_ROUTES = {
    ("plurality", False, "unit"): PLURALITY_DP,
    ("plurality", False, "dollar"): PLURALITY_DP,
    ("plurality", False, "swap"): PLURALITY_FLOW,
    ("plurality", False, "shift"): PLURALITY_FLOW,
    ("plurality", True, "unit"): PLURALITY_DP,
    ("plurality", True, "dollar"): PLURALITY_DP,
    ("plurality", True, "swap"): ORACLE,
    ("plurality", True, "shift"): ORACLE,
    ("borda", False, "unit"): BORDA_DP,
    ("borda", False, "dollar"): BORDA_DP,
    ("borda", False, "swap"): ORACLE,
    ("borda", False, "shift"): BORDA_DP,
    ("borda", True, "unit"): ORACLE,
    ("borda", True, "dollar"): ORACLE,
    ("borda", True, "swap"): ORACLE,
    ("borda", True, "shift"): ORACLE,
}


def test_dispatch_covers_every_variant():
    for (rule_name, thresholded, bribery), expected in EXPECTED_ROUTES.items():
        for with_preferred in (False, True):
            variant = Variant(
                ScoringRule(rule_name), thresholded, bribery, with_preferred
            )
            inst = random_instance(variant, seed=5, index=0)
            assert dispatch(inst) == expected, variant.label()


def write(tmp_path, name, instance):
    path = tmp_path / name
    path.write_text(serialize_instance(instance))
    return str(path)


def test_solve_feasible_exit_zero(tmp_path, capsys):
    path = write(tmp_path, "a.txt", three_party_dollar_cbp(7))
    assert cli.main(["solve", path]) == 0
    out = capsys.readouterr().out
    assert "feasible: yes" in out and "cost: 7" in out


def test_solve_infeasible_exit_one(tmp_path, capsys):
    path = write(tmp_path, "b.txt", three_party_dollar_cbp(6))
    assert cli.main(["solve", path]) == 1
    assert "feasible: no" in capsys.readouterr().out


def test_solve_json_format(tmp_path, capsys):
    path = write(tmp_path, "c.txt", three_party_unit_cb(5))
    assert cli.main(["solve", path, "--format", "json", "--emit-witness"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["feasible"] is True
    assert payload["cost"] == 5
    assert payload["solver"] == PLURALITY_DP
    assert len(payload["witness"]) == 5


def test_malformed_instance_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    good = serialize_instance(three_party_unit_cb(5))
    path.write_text(good.replace("voter v1: X Y Z", "voter v1: X Y X", 1))
    assert cli.main(["solve", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line" in err


def test_oracle_refusal_exit_three(tmp_path, capsys):
    x4 = ExactCover34Instance(4, ((1, 2, 3, 4),) * 3)
    path = write(tmp_path, "big.txt", reduce_x3c_to_borda_unit_cb(x4))
    assert cli.main(["oracle", str(path)]) == 3
    assert "expansions" in capsys.readouterr().err


def test_crossval_all_agree(tmp_path, capsys):
    code = cli.main(
        ["crossval", "--seed", "1", "--count", "3",
         "--artifact-dir", str(tmp_path / "artifacts")]
    )
    assert code == 0
    out = capsys.readouterr().out
    lines = [l for l in out.splitlines() if l and not l.startswith("variant")]
    assert len(lines) == 14
    assert all(line.endswith("3 3") for line in lines)


def test_crossval_zero_count(tmp_path, capsys):
    code = cli.main(
        ["crossval", "--seed", "1", "--count", "0",
         "--artifact-dir", str(tmp_path / "artifacts")]
    )
    assert code == 0
    out = capsys.readouterr().out
    lines = [l for l in out.splitlines() if l and not l.startswith("variant")]
    assert all(line.endswith("0 0") for line in lines)


def test_crossval_detects_corrupted_solver(tmp_path, capsys, monkeypatch):
    def lying_solver_for(name, budget):
        return lambda instance: SolveOutcome.no()

    monkeypatch.setattr(cli, "solver_for", lying_solver_for)
    code = cli.main(
        ["crossval", "--seed", "1", "--count", "2",
         "--artifact-dir", str(tmp_path / "artifacts")]
    )
    assert code == 1
    dumps = list((tmp_path / "artifacts").glob("disagreement-*.txt"))
    assert dumps, "expected a replayable disagreement artifact"
    err = capsys.readouterr().err
    assert "disagreement" in err


def test_reduce_and_solve_pipeline(tmp_path, capsys):
    source = tmp_path / "cover.txt"
    source.write_text("universe: 4\nsubset: 1 2 3 4\nsubset: 1 2 3 4\nsubset: 1 2 3 4\n")
    out_path = tmp_path / "reduced.txt"
    assert cli.main(["reduce", "x3c-plurality-shift", str(source),
                     "--output", str(out_path)]) == 0
    assert cli.main(["solve", str(out_path)]) == 0


def test_gen_reproducible(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    args = ["gen", "--rule", "borda", "--bribery", "shift", "--preferred",
            "--seed", "9", "--index", "2"]
    assert cli.main(args + ["--output", str(a)]) == 0
    assert cli.main(args + ["--output", str(b)]) == 0
    assert a.read_text() == b.read_text()


def test_bench_reports_table(tmp_path, capsys):
    path = write(tmp_path, "bench.txt", three_party_dollar_cbp(7))
    assert cli.main(["bench", path, "--reps", "3"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].startswith("file")
    assert len(lines) == 2
    fields = lines[1].split("\t")
    assert fields[1] == "Plurality_t-CBP/dollar"
    assert int(fields[5]) > 0  # table cells counted


def test_bench_empty_list(capsys):
    assert cli.main(["bench", "--reps", "2"]) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 1
