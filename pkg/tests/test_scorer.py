import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dbees.scorer import COLUMNS, EvalReport, f_measure, format_table, report_record, score


def test_f_measure_reported_rows():
    # published d004 and D-Bees rows
    assert f_measure(78.33, 78.15) == pytest.approx(78.24, abs=0.005)
    assert f_measure(80.47, 80.41) == pytest.approx(80.44, abs=0.005)


@given(st.floats(0, 100))
def test_f_measure_equal_arguments(x):
    assert f_measure(x, x) == pytest.approx(x, abs=1e-9)


def test_f_measure_zero():
    assert f_measure(0, 50) == 0.0
    assert f_measure(0, 0) == 0.0
    with pytest.raises(ValueError):
        f_measure(-1, 2)


def test_score_perfect():
    gold = {"a": "x", "b": "y"}
    rep = score(dict(gold), gold)
    assert (rep.attempted_pct, rep.precision, rep.recall, rep.f_measure) == (100.0, 100.0, 100.0, 100.0)


def test_score_half_attempted():
    gold = {"a": "x", "b": "y", "c": "z", "d": "w"}
    rep = score({"a": "x", "b": "y", "c": None}, gold)
    assert rep.attempted_count == 2 and rep.correct == 2
    assert rep.precision == 100.0 and rep.recall == 50.0
    assert rep.f_measure == pytest.approx(66.6667, abs=1e-4)


def test_score_empty_predictions_and_ignored():
    gold = {"a": "x"}
    rep = score({}, gold)
    assert (rep.attempted_count, rep.precision, rep.recall, rep.f_measure) == (0, 0.0, 0.0, 0.0)
    assert score({"zz": "x", "a": "x"}, gold).ignored == 1
    with pytest.raises(ValueError):
        score({"a": "x"}, {})


@given(
    st.dictionaries(st.integers(0, 30), st.sampled_from("abc"), min_size=1),
    st.dictionaries(st.integers(0, 40), st.one_of(st.none(), st.sampled_from("abc"))),
    st.randoms(use_true_random=False),
)
def test_score_properties(gold, preds, rnd):
    gold = {str(k): v for k, v in gold.items()}
    preds = {str(k): v for k, v in preds.items()}
    rep = score(preds, gold)
    assert rep.correct <= rep.attempted_count <= rep.total
    assert rep.precision >= rep.recall
    if rep.attempted_count == rep.total:
        assert rep.precision == rep.recall
    assert min(rep.precision, rep.recall) - 1e-9 <= rep.f_measure <= max(rep.precision, rep.recall) + 1e-9
    items = list(preds.items())
    rnd.shuffle(items)
    assert score(dict(items), gold) == rep


def test_table_and_record():
    rep = score({"a": "x", "b": "q"}, {"a": "x", "b": "y"})
    text = format_table([("MFS", rep), ("lit", (99.91, 80.47, 80.41, 80.44))])
    header = text.splitlines()[0]
    positions = [header.index(c) for c in COLUMNS]
    assert positions == sorted(positions)
    assert "50.00" in text and "80.47" in text
    rec = json.loads(report_record("MFS", rep))
    assert rec["system"] == "MFS" and rec["precision"] == 50.0
    assert EvalReport(**{k: v for k, v in rec.items() if k != "system"}) == rep
