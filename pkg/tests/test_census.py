import json

import pytest

from powergraph import cli
from powergraph.census import (
    CSV_COLUMNS,
    CensusConfig,
    analyze,
    enumerate_census,
    format_records,
    run_census,
    verify_all,
)
from powergraph.groups import parse_descriptor

from test_groups import S3_TABLE


def labels(cfg):
    return [s.label for s in enumerate_census(cfg)]


def test_enumerate_examples():
    assert labels(CensusConfig(max_order=4, kinds=("cyclic",))) == ["C2", "C3", "C4"]
    assert "C2xC3" in labels(CensusConfig(max_order=6, kinds=("cyclic",)))
    assert "(C2xC2)xC9" in labels(CensusConfig(max_order=36, kinds=("cyclic", "abelian")))


def test_enumerate_is_sorted_and_unique():
    specs = enumerate_census(CensusConfig(max_order=150))
    keys = [(s.order, s.label) for s in specs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all(s.order <= 150 for s in specs)
    assert "Q8xC3" in [s.label for s in specs]


def test_config_validation():
    for kwargs in ({"max_order": 1}, {"oracle_cap": 15}, {"jobs": 0}, {"kinds": ("nope",)}, {"output_format": "xml"}):
        with pytest.raises(ValueError):
            CensusConfig(**kwargs)


def test_analyze_examples():
    rec = analyze(parse_descriptor("cyclic:2^3"))
    assert (rec["kappa"], rec["kappa_prime"], rec["delta"], rec["clause"]) == (7, 7, 7, "1")
    rec = analyze(parse_descriptor("dicyclic:2^3"))
    assert (rec["kappa"], rec["delta"], rec["clause"], rec["agreement"]) == (2, 3, "none", True)
    rec = analyze(parse_descriptor("elementary:2^2;cyclic:3^1"))
    assert (rec["kappa"], rec["delta"], rec["clause"], rec["agreement"]) == (3, 3, "2", True)
    assert rec["min_degree_witness_order"] == 2
    assert rec["maximal_cyclic_orders"] == [6, 6, 6]


def test_analyze_budget():
    rec = analyze(parse_descriptor("cyclic:2^9"))
    assert rec["skipped"] == "budget" and "kappa" not in rec


def test_reports_are_deterministic_and_cache_is_transparent(tmp_path):
    cfg = CensusConfig(max_order=30)
    cold = format_records(run_census(cfg))
    assert cold == format_records(run_census(cfg))
    cache = tmp_path / "cache.jsonl"
    cached_cfg = CensusConfig(max_order=30, cache_path=str(cache))
    first = format_records(run_census(cached_cfg))
    n_lines = len(cache.read_text().splitlines())
    second = format_records(run_census(cached_cfg))
    assert first == second == cold
    assert n_lines == len(enumerate_census(cfg)) == len(cache.read_text().splitlines())


def test_csv_columns():
    text = format_records(run_census(CensusConfig(max_order=8)), "csv")
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].startswith("C2,2,1,1,1,1,True")


def test_parallel_matches_serial():
    serial = verify_all(CensusConfig(max_order=40), families=False)
    parallel = verify_all(CensusConfig(max_order=40, jobs=2), families=False)
    assert serial.tally.summary() == parallel.tally.summary()
    assert serial.status == parallel.status == 0
    cold = run_census(CensusConfig(max_order=40))
    assert run_census(CensusConfig(max_order=40, jobs=2)) == cold


def corrupted_predicate(spec, g):
    return "none"


def test_verify_negative_control():
    res = verify_all(CensusConfig(max_order=12), predicate=corrupted_predicate, families=False)
    assert res.status == 1
    assert "C2" in " ".join(res.tally.failures["theorem"])


def test_verify_cyclic_slice():
    res = verify_all(CensusConfig(max_order=60, kinds=("cyclic",)))
    assert res.status == 0
    assert res.tally.checked["cyclic_criterion"] == len(res.labels)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def test_cli_catalog(capsys):
    assert cli.main(["catalog"]) == 0
    assert "semidihedral" in capsys.readouterr().out


def test_cli_build_dump_graph(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert cli.main(["build", "--spec", "dicyclic:2^3", "--dump-graph", str(out)]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["label"] == "Q8" and info["order"] == 8
    assert out.read_text().splitlines()[0] == "8 16"  # 7 from e, 6 from the involution, 3 pairs x, x^-1


def test_cli_analyze(tmp_path, capsys):
    assert cli.main(["analyze", "--spec", "abelian[1,1]:2^2;cyclic:3^2"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["kappa"] == rec["delta"] == 9 and rec["clause"] == "2"
    f = tmp_path / "s3.txt"
    f.write_text(S3_TABLE)
    assert cli.main(["analyze", "--cayley", str(f)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["nilpotent"] is False and rec["clause"] == "n/a" and rec["order"] == 6


def test_cli_errors(tmp_path, capsys):
    assert cli.main(["analyze", "--spec", "cyclic:4^1"]) == 2
    assert cli.main(["build", "--spec", "garbage"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0 1 2\n1 1 0\n2 0 1\n")
    assert cli.main(["analyze", "--cayley", str(bad)]) == 2
    assert "Latin-square" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        cli.main(["census"])
    assert exc.value.code == 2


def test_cli_census_and_verify(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert cli.main(["census", "--max-order", "12", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert cli.main(["census", "--max-order", "6", "--kinds", "cyclic"]) == 0
    recs = [json.loads(ln) for ln in capsys.readouterr().out.splitlines()]
    assert [r["label"] for r in recs] == ["C2", "C3", "C4", "C5", "C2xC3"]
    assert cli.main(["verify", "--max-order", "24", "--oracle-cap", "12"]) == 0
    assert "ok" in capsys.readouterr().out
