#!/usr/bin/env python

"""
Scoring predicted route labels against reference labels: per-label
precision and recall, row-normalized confusion matrices, overall accuracy,
and text / json / svg reports.
"""

import json
import logging
from collections import OrderedDict, namedtuple
import numpy as np
import pandas as pd
from sklearn.metrics import confusion_matrix

from .utils import EvaluationError, BLOCKING, get_text_from_source, route_key

logger = logging.getLogger(__name__)


REPORT_FORMATS = ("text", "json", "svg")


class LabeledPair(namedtuple(
    "LabeledPair", ["game_id", "play_id", "player_id", "predicted", "reference"])):
    "A predicted and a reference label for one route."
    __slots__ = ()

    @property
    def key(self):
        return route_key(self.game_id, self.play_id, self.player_id)



class EvalReport(object):
    """
    Evaluation summary.

    Attributes:
    -----------
    per_label: OrderedDict
        label -> {precision, recall, count, precision_defined,
        recall_defined} for every label except blocking/bubble. count is the
        number of reference occurrences. An undefined ratio (zero
        denominator) is reported as 0 with its flag False.
    labels: list
        Alphabetical rows/columns of the confusion matrices.
    counts: list of lists
        Unnormalized confusion counts, reference x predicted.
    confusion: list of lists
        counts normalized by row total (all-zero rows stay zero).
    overall_precision, overall_recall: float
        Micro-averages pooled over the per_label rows.
    macro_precision, macro_recall: float
        Unweighted means over the rows where each ratio is defined.
    accuracy: float
        Fraction of all pairs (blocking/bubble included) labeled correctly.
    """
    def __init__(
        self,
        per_label,
        labels,
        counts,
        confusion,
        overall_precision,
        overall_recall,
        macro_precision,
        macro_recall,
        accuracy,
        total,
        ):
        self.per_label = OrderedDict(per_label)
        self.labels = list(labels)
        self.counts = [[int(j) for j in i] for i in counts]
        self.confusion = [[float(j) for j in i] for i in confusion]
        self.overall_precision = overall_precision
        self.overall_recall = overall_recall
        self.macro_precision = macro_precision
        self.macro_recall = macro_recall
        self.accuracy = accuracy
        self.total = int(total)

    @property
    def table_count(self):
        "Reference occurrences over the per_label rows."
        return sum(i["count"] for i in self.per_label.values())

    def to_dict(self):
        return OrderedDict([
            ("per_label", OrderedDict(
                (label, OrderedDict(sorted(row.items())))
                for (label, row) in self.per_label.items())),
            ("labels", self.labels),
            ("counts", self.counts),
            ("confusion", self.confusion),
            ("overall_precision", self.overall_precision),
            ("overall_recall", self.overall_recall),
            ("macro_precision", self.macro_precision),
            ("macro_recall", self.macro_recall),
            ("accuracy", self.accuracy),
            ("total", self.total),
        ])

    @classmethod
    def from_dict(cls, data):
        return cls(
            per_label=OrderedDict(
                (label, dict(row)) for (label, row) in data["per_label"].items()),
            labels=data["labels"],
            counts=data["counts"],
            confusion=data["confusion"],
            overall_precision=data["overall_precision"],
            overall_recall=data["overall_recall"],
            macro_precision=data["macro_precision"],
            macro_recall=data["macro_recall"],
            accuracy=data["accuracy"],
            total=data["total"],
        )

    def __eq__(self, other):
        if not isinstance(other, EvalReport):
            return NotImplemented
        return json.dumps(self.to_dict()) == json.dumps(other.to_dict())

    __hash__ = None

    def __repr__(self):
        return "EvalReport(total={}, accuracy={:.4f})".format(self.total, self.accuracy)



def _ratio(num, den):
    "(value, defined) with 0 for an empty denominator."
    if den:
        return num / float(den), True
    return 0.0, False



def _count_matrix(pairs, labels=None):
    pairs = list(pairs)
    if not pairs:
        raise EvaluationError("no labeled pairs to score")
    reference = [i.reference for i in pairs]
    predicted = [i.predicted for i in pairs]
    if labels is None:
        labels = sorted(set(reference) | set(predicted))
    counts = confusion_matrix(reference, predicted, labels=labels)
    return list(labels), counts



def _normalize_rows(counts):
    counts = np.asarray(counts, dtype=float)
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        normed = np.where(totals > 0, counts / totals, 0.0)
    return normed



def confusion(pairs, labels=None):
    """
    Row-normalized confusion matrix as a DataFrame: rows are reference
    labels, columns predicted labels, both sorted alphabetically unless
    'labels' gives the order.
    """
    labels, counts = _count_matrix(pairs, labels)
    return pd.DataFrame(
        _normalize_rows(counts),
        index=pd.Index(labels, name="reference"),
        columns=pd.Index(labels, name="predicted"),
    )



def score(pairs):
    """
    Build an EvalReport from LabeledPairs. Pair order does not matter.
    """
    labels, counts = _count_matrix(pairs)
    total = int(counts.sum())
    correct = int(np.trace(counts))

    per_label = OrderedDict()
    pooled_tp = pooled_fp = pooled_fn = 0
    for idx, label in enumerate(labels):
        if label == BLOCKING:
            continue
        tp = int(counts[idx, idx])
        fp = int(counts[:, idx].sum()) - tp
        fn = int(counts[idx, :].sum()) - tp
        precision, pdef = _ratio(tp, tp + fp)
        recall, rdef = _ratio(tp, tp + fn)
        per_label[label] = {
            "precision": precision,
            "recall": recall,
            "count": tp + fn,
            "precision_defined": pdef,
            "recall_defined": rdef,
        }
        pooled_tp += tp
        pooled_fp += fp
        pooled_fn += fn

    defined_p = [i["precision"] for i in per_label.values() if i["precision_defined"]]
    defined_r = [i["recall"] for i in per_label.values() if i["recall_defined"]]

    return EvalReport(
        per_label=per_label,
        labels=labels,
        counts=counts.tolist(),
        confusion=_normalize_rows(counts).tolist(),
        overall_precision=_ratio(pooled_tp, pooled_tp + pooled_fp)[0],
        overall_recall=_ratio(pooled_tp, pooled_tp + pooled_fn)[0],
        macro_precision=(float(np.mean(defined_p)) if defined_p else 0.0),
        macro_recall=(float(np.mean(defined_r)) if defined_r else 0.0),
        accuracy=correct / float(total),
        total=total,
    )



#######################################################
# Reports
#######################################################
def format_table(report, digits=2):
    """
    Route / Precision / Recall / Count rows plus an Overall row.
    """
    fmt = "{:<16}{:>10}{:>8}{:>7}"
    num = "{:." + str(digits) + "f}"
    lines = [fmt.format("Route", "Precision", "Recall", "Count")]
    for label, row in report.per_label.items():
        lines.append(fmt.format(
            label,
            num.format(row["precision"]) if row["precision_defined"] else "-",
            num.format(row["recall"]) if row["recall_defined"] else "-",
            row["count"],
        ))
    lines.append(fmt.format(
        "Overall",
        num.format(report.overall_precision),
        num.format(report.overall_recall),
        report.table_count,
    ))
    lines.append("")
    lines.append("Accuracy: {:.4f} ({} of {} routes)".format(
        report.accuracy,
        int(round(report.accuracy * report.total)),
        report.total,
    ))
    return "\n".join(lines) + "\n"



def render_report(report, fmt="text"):
    """
    Render an EvalReport as UTF-8 bytes.

    Parameters:
    -----------
    fmt: str
        'text' (a precision/recall table), 'json' (lossless, readable back
        with EvalReport.from_dict), or 'svg' (shaded confusion grid).
    """
    if fmt == "text":
        return format_table(report).encode("utf-8")
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode("utf-8")
    if fmt == "svg":
        from .RouteDrawing import draw_confusion, render_svg
        canvas = draw_confusion(report)[0]
        return render_svg(canvas)
    raise EvaluationError(
        "unknown report format {!r}; use one of {}".format(fmt, REPORT_FORMATS))



#######################################################
# Reference labels and joins
#######################################################
def write_labels(records, handle=None):
    """
    Write reference labels as JSON lines of {game_id, play_id, player_id,
    label}. records are (key, label) pairs or objects with .key and
    .label. Returns the text.
    """
    lines = []
    for record in records:
        if isinstance(record, tuple):
            key, label = record
        else:
            key, label = record.key, record.label
        lines.append(json.dumps(OrderedDict([
            ("game_id", key[0]),
            ("play_id", key[1]),
            ("player_id", key[2]),
            ("label", label),
        ])))
    text = "".join(i + "\n" for i in lines)
    if handle:
        with open(handle, 'w') as out:
            out.write(text)
    return text



def read_labels(source):
    """
    Load reference labels into an OrderedDict of route key -> label.
    """
    labels = OrderedDict()
    text = get_text_from_source(source)
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            key = route_key(data["game_id"], data["play_id"], data["player_id"])
            label = data["label"]
        except (ValueError, KeyError, TypeError) as err:
            raise EvaluationError(
                "bad label record on line {}: {}".format(lineno, err))
        if key in labels:
            raise EvaluationError(
                "duplicate label for {} on line {}".format(":".join(key), lineno))
        labels[key] = label
    return labels



def join_labels(results, references):
    """
    Pair MatchResults with reference labels on (game, play, player).

    Returns:
    --------
    (pairs, unmatched): pairs is a list of LabeledPair in results order;
    unmatched lists (key, reason) for predictions without a reference,
    references without a prediction, and failed predictions.
    """
    references = OrderedDict(references)
    pairs = []
    unmatched = []
    seen = set()
    for result in results:
        key = result.key
        if key not in references:
            unmatched.append((key, "no reference label"))
            continue
        seen.add(key)
        if result.label is None:
            unmatched.append((key, "classification failed"))
            continue
        pairs.append(LabeledPair(
            key[0], key[1], key[2], result.label, references[key]))

    for key in references:
        if key not in seen:
            unmatched.append((key, "no prediction"))

    if unmatched:
        logger.warning("%d routes could not be paired", len(unmatched))
    return pairs, unmatched



def position_table(routes, results):
    """
    Count of predicted labels by route-runner position (a pandas crosstab).
    """
    positions = {i.key: i.position for i in routes}
    frame = pd.DataFrame([
        {"position": positions.get(i.key), "label": i.label}
        for i in results if i.label is not None
    ], columns=["position", "label"])
    return pd.crosstab(frame["position"], frame["label"])
