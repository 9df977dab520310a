#!/usr/bin/env python

import json
import random
import xml.etree.ElementTree as ET
import numpy as np
import pytest

from routetree.Classifier import MatchResult
from routetree.Evaluate import (
    LabeledPair, EvalReport, score, confusion, render_report, format_table,
    write_labels, read_labels, join_labels, position_table,
)
from routetree.utils import EvaluationError, BLOCKING

from conftest import make_route


def pairs_from(rows):
    "rows of (reference, predicted, n)"
    pairs = []
    for reference, predicted, n in rows:
        for _ in range(n):
            idx = len(pairs)
            pairs.append(LabeledPair("g", "p", str(idx), predicted, reference))
    return pairs


OUT_ROWS = [
    ("out", "out", 16),
    ("out", "comeback", 20),
    ("corner", "out", 1),
    ("corner", "corner", 5),
]


def test_out_precision_and_recall():
    report = score(pairs_from(OUT_ROWS))
    row = report.per_label["out"]
    assert abs(row["precision"] - 16 / 17.) < 1e-12
    assert abs(row["recall"] - 16 / 36.) < 1e-12
    assert row["count"] == 36
    assert report.labels == ["comeback", "corner", "out"]


def test_undefined_ratios_are_flagged():
    report = score(pairs_from(OUT_ROWS))
    comeback = report.per_label["comeback"]
    # predicted but never a reference label
    assert comeback["count"] == 0
    assert not comeback["recall_defined"]
    assert comeback["precision_defined"] and comeback["precision"] == 0
    assert report.macro_recall == pytest.approx((16 / 36. + 5 / 6.) / 2)


def test_perfect_predictions():
    pairs = pairs_from([(i, i, 3) for i in ("curl", "dig", "post")])
    report = score(pairs)
    np.testing.assert_array_equal(report.confusion, np.eye(3))
    assert report.accuracy == 1.0
    assert report.overall_precision == report.overall_recall == 1.0


def test_confusion_rows_sum_to_one():
    table = confusion(pairs_from(OUT_ROWS))
    assert list(table.index) == list(table.columns) == ["comeback", "corner", "out"]
    sums = table.sum(axis=1)
    # comeback never occurs as a reference, so its row is empty
    assert sums["comeback"] == 0
    np.testing.assert_allclose(sums[["corner", "out"]], 1.0)


def test_micro_average_is_accuracy_without_blocking():
    report = score(pairs_from(OUT_ROWS))
    assert report.overall_precision == pytest.approx(report.accuracy)
    assert report.overall_recall == pytest.approx(report.accuracy)
    assert report.accuracy == pytest.approx(21 / 42.)


def test_order_does_not_matter():
    pairs = pairs_from(OUT_ROWS + [("dig", "post", 4), ("post", "post", 7)])
    shuffled = list(pairs)
    random.Random(5).shuffle(shuffled)
    assert score(shuffled) == score(pairs)


def test_blocking_counts_toward_accuracy_only():
    pairs = pairs_from([
        ("post", "post", 3),
        (BLOCKING, BLOCKING, 2),
        (BLOCKING, "post", 1),
    ])
    report = score(pairs)
    assert BLOCKING in report.labels
    assert BLOCKING not in report.per_label
    assert report.table_count == 3
    assert report.total == 6
    assert report.accuracy == pytest.approx(5 / 6.)
    assert report.per_label["post"]["precision"] == pytest.approx(3 / 4.)


def test_no_pairs():
    with pytest.raises(EvaluationError):
        score([])



class TestReports:

    report = score(pairs_from(OUT_ROWS))

    def test_text(self):
        text = render_report(self.report, "text").decode("utf-8")
        assert text == format_table(self.report)
        lines = text.splitlines()
        assert lines[0].split() == ["Route", "Precision", "Recall", "Count"]
        rows = [i.split()[0] for i in lines[1:] if i.strip() and not i.startswith("Accuracy")]
        assert rows == ["comeback", "corner", "out", "Overall"]
        assert "0.94" in lines[3] and "0.44" in lines[3]
        assert lines[-1].startswith("Accuracy: 0.5000")

    def test_json(self):
        data = json.loads(render_report(self.report, "json").decode("utf-8"))
        assert data["labels"] == ["comeback", "corner", "out"]
        assert EvalReport.from_dict(data) == self.report

    def test_svg(self):
        root = ET.fromstring(render_report(self.report, "svg"))
        assert root.tag.endswith("svg")

    def test_unknown_format(self):
        with pytest.raises(EvaluationError):
            render_report(self.report, "pdf")



class TestLabels:

    def test_write_and_read(self, tmp_path):
        path = tmp_path / "labels.jsonl"
        text = write_labels([(("1", "2", "3"), "post"), (("1", "2", "4"), "dig")], str(path))
        assert path.read_text() == text
        labels = read_labels(str(path))
        assert list(labels.items()) == [(("1", "2", "3"), "post"), (("1", "2", "4"), "dig")]

    def test_duplicates_and_bad_records(self):
        text = write_labels([(("1", "2", "3"), "post")] * 2)
        with pytest.raises(EvaluationError):
            read_labels(text)
        with pytest.raises(EvaluationError):
            read_labels('{"game_id": 1, "play_id": 2}\n')

    def test_join(self):
        references = {("g", "p", "1"): "post", ("g", "p", "2"): "dig", ("g", "p", "9"): "out"}
        results = [
            MatchResult("g", "p", "1", "post"),
            MatchResult("g", "p", "2", None, error="zero extent"),
            MatchResult("g", "p", "3", "curl"),
        ]
        pairs, unmatched = join_labels(results, references)
        assert pairs == [LabeledPair("g", "p", "1", "post", "post")]
        assert unmatched == [
            (("g", "p", "2"), "classification failed"),
            (("g", "p", "3"), "no reference label"),
            (("g", "p", "9"), "no prediction"),
        ]


def test_position_table():
    routes = [
        make_route([(0, 0), (0, 9)], player_id="1", position="WR"),
        make_route([(0, 0), (0, 9)], player_id="2", position="TE"),
        make_route([(0, 0), (0, 9)], player_id="3", position="WR"),
    ]
    results = [MatchResult(i.game_id, i.play_id, i.player_id, "post") for i in routes]
    table = position_table(routes, results)
    assert table.loc["WR", "post"] == 2
    assert table.loc["TE", "post"] == 1
