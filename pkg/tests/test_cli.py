import json
import statistics

import pytest

from dbees.cli import main
from dbees.inventory import load_instance_file, load_inventory_file, load_key, load_key_file
from dbees.relatedness import Relatedness


@pytest.fixture
def problem(tmp_path):
    prefix = tmp_path / "p"
    assert main(["gen-instance", "--words", "4", "--max-senses", "4", "--seed", "7", "--out", str(prefix)]) == 0
    return {
        "inventory": f"{prefix}.inventory.jsonl",
        "instance": f"{prefix}.instance",
        "gold": f"{prefix}.gold",
        "dir": tmp_path,
    }


def test_gen_instance_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        prefix = tmp_path / f"run{k}"
        assert main(["gen-instance", "--seed", "7", "--words", "5", "--out", str(prefix)]) == 0
        outs.append([(tmp_path / f"run{k}{ext}").read_bytes() for ext in (".inventory.jsonl", ".instance", ".gold")])
    assert outs[0] == outs[1]


def test_gen_instance_mono_gold_is_unique(tmp_path):
    prefix = tmp_path / "mono"
    assert main(["gen-instance", "--max-senses", "1", "--words", "3", "--out", str(prefix)]) == 0
    inv = load_inventory_file(f"{prefix}.inventory.jsonl")
    inst = load_instance_file(f"{prefix}.instance", inv)
    gold = load_key_file(f"{prefix}.gold")
    assert gold == {t.instance_id: inv.senses_of(t)[0] for t in inst.targets}
    assert (tmp_path / "mono.gold").read_text().startswith("# gold: oracle")


def test_gen_instance_over_cap_uses_mfs(tmp_path):
    prefix = tmp_path / "big"
    assert main(["gen-instance", "--words", "6", "--min-senses", "3", "--max-senses", "3",
                 "--cap", "10", "--out", str(prefix)]) == 0
    assert (tmp_path / "big.gold").read_text().startswith("# gold: mfs")


@pytest.mark.parametrize("flags", [["--words", "0"], ["--depth", "0"], ["--max-senses", "0"]])
def test_gen_instance_bad_flags(tmp_path, flags):
    assert main(["gen-instance", *flags, "--out", str(tmp_path / "x")]) == 2


def test_gen_then_oracle_round_trip(problem, capsys):
    out = problem["dir"] / "oracle.key"
    assert main(["oracle", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--out", str(out)]) == 0
    assert load_key_file(str(out)) == load_key_file(problem["gold"])


def test_disambiguate_deterministic(problem):
    outs = []
    for k in range(2):
        out = problem["dir"] / f"key{k}"
        trace = problem["dir"] / f"trace{k}"
        assert main(["disambiguate", "--inventory", problem["inventory"], "--instance", problem["instance"],
                     "--seed", "1", "--out", str(out), "--trace", str(trace)]) == 0
        outs.append((out.read_bytes(), trace.read_bytes()))
    assert outs[0] == outs[1]
    key = load_key_file(str(problem["dir"] / "key0"))
    inv = load_inventory_file(problem["inventory"])
    inst = load_instance_file(problem["instance"], inv)
    assert set(key) == {t.instance_id for t in inst.targets}


def test_trace_has_record_per_backward_pass(problem):
    trace = problem["dir"] / "trace"
    out = problem["dir"] / "key"
    assert main(["disambiguate", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--nc", "1", "--trace", str(trace), "--out", str(out)]) == 0
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    summary = out.read_text()
    passes = int(summary.split("forward_passes ")[1].split()[0])
    assert sum(r["event"] == "backward" for r in records) == passes >= 1


def test_missing_inventory_exit_2(tmp_path, capsys):
    missing = str(tmp_path / "nope.jsonl")
    assert main(["disambiguate", "--inventory", missing, "--instance", missing]) == 2
    assert missing in capsys.readouterr().err


def test_malformed_inventory_exit_2(tmp_path, capsys, problem):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"type": "sense"\n')
    assert main(["oracle", "--inventory", str(bad), "--instance", problem["instance"]]) == 2
    assert "line 1" in capsys.readouterr().err


def test_bad_solver_flag_exit_2(problem):
    assert main(["disambiguate", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--recruiters", "0"]) == 2


def test_oracle_cap_exit_4(problem, capsys):
    inv = load_inventory_file(problem["inventory"])
    inst = load_instance_file(problem["instance"], inv)
    size = 1
    for t in inst.targets:
        size *= len(inv.senses_of(t))
    assert main(["oracle", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--cap", str(size - 1)]) == 4
    assert str(size) in capsys.readouterr().err


def test_oracle_mono_sense(tmp_path, capsys):
    prefix = tmp_path / "m"
    main(["gen-instance", "--max-senses", "1", "--out", str(prefix)])
    assert main(["oracle", "--inventory", f"{prefix}.inventory.jsonl", "--instance", f"{prefix}.instance"]) == 0
    printed = load_key(capsys.readouterr().out)
    assert printed == load_key_file(f"{prefix}.gold")


def test_compare_report_shape(problem):
    out = problem["dir"] / "report.txt"
    assert main(["compare", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--gold", problem["gold"], "--out", str(out)]) == 0
    text = out.read_text()
    header = text.splitlines()[1]
    cols = ["Attempted", "Precision", "Recall", "F-Measure"]
    assert [header.index(c) for c in cols] == sorted(header.index(c) for c in cols)
    assert "D-Bees (paper-reported)" in text and "80.47" in text and "86.44" in text
    oracle_row = next(line for line in text.splitlines() if line.startswith("Oracle"))
    assert oracle_row.split()[1:] == ["100.00"] * 4


def test_compare_mfs_gold(problem, tmp_path):
    inv = load_inventory_file(problem["inventory"])
    inst = load_instance_file(problem["instance"], inv)
    gold = tmp_path / "mfs.gold"
    gold.write_text("".join(
        f"{t.instance_id} {min(inv.senses_of(t), key=lambda s: inv.senses[s].freq_rank)}\n" for t in inst.targets
    ))
    out = tmp_path / "r.jsonl"
    assert main(["compare", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--gold", str(gold), "--format", "jsonl", "--out", str(out)]) == 0
    rows = {(r["system"], r.get("source")): r for r in map(json.loads, out.read_text().splitlines())}
    mfs = rows[("MFS", None)]
    assert (mfs["attempted_pct"], mfs["precision"], mfs["recall"], mfs["f_measure"]) == (100.0,) * 4
    assert rows[("D-Bees", "paper-reported")]["precision"] == 80.47


def test_compare_rs_precision_matches_expectation(tmp_path):
    """Mean RS precision across seeds tracks the mean of 1/m over targets."""
    prefix = tmp_path / "rs"
    main(["gen-instance", "--words", "8", "--max-senses", "4", "--min-senses", "2", "--seed", "3",
          "--cap", "1", "--out", str(prefix)])
    inv = load_inventory_file(f"{prefix}.inventory.jsonl")
    inst = load_instance_file(f"{prefix}.instance", inv)
    expected = 100.0 * statistics.mean(1 / len(inv.senses_of(t)) for t in inst.targets)
    precisions = []
    for seed in range(300):
        out = tmp_path / "r.jsonl"
        main(["compare", "--inventory", f"{prefix}.inventory.jsonl", "--instance", f"{prefix}.instance",
              "--gold", f"{prefix}.gold", "--seed", str(seed), "--iterations", "1", "--sa-steps", "1",
              "--sa-cooling", "0.01", "--cap", "1", "--format", "jsonl", "--out", str(out)])
        row = next(r for r in map(json.loads, out.read_text().splitlines()) if r["system"] == "RS")
        precisions.append(row["precision"])
    # standard error of the mean over 300 runs of 8 targets is about 1 point
    assert abs(statistics.mean(precisions) - expected) < 4.0


def test_compare_needs_gold(problem):
    assert main(["compare", "--inventory", problem["inventory"], "--instance", problem["instance"]]) == 2


def test_compare_multiple_instances(problem):
    # the same instance twice: ids are namespaced per file, so 2 x 4 gold targets
    pair = ["--instance", problem["instance"], "--gold", problem["gold"]]
    out = problem["dir"] / "r.jsonl"
    assert main(["compare", "--inventory", problem["inventory"], *pair, *pair,
                 "--format", "jsonl", "--out", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    oracle = next(r for r in rows if r["system"] == "Oracle")
    assert oracle["total"] == 8 and oracle["precision"] == 100.0


def test_disambiguate_matches_library(problem, capsys):
    from dbees.bco import HiveConfig, run_dbees
    from dbees.inventory import order_by_pos

    assert main(["disambiguate", "--inventory", problem["inventory"], "--instance", problem["instance"],
                 "--seed", "5"]) == 0
    key = load_key(capsys.readouterr().out)
    inv = load_inventory_file(problem["inventory"])
    inst = load_instance_file(problem["instance"], inv)
    res = run_dbees(order_by_pos(inst), Relatedness(inv), HiveConfig(seed=5))
    assert key == res.best
