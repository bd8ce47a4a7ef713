"""Epoch-level metrics: per-class/macro F1, accuracy, macro AUROC."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from ..data.stages import NUM_CLASSES


class EmptyInput(ValueError):
    pass


class NoDiscriminableClass(ValueError):
    pass


@dataclass
class MetricReport:
    macro_f1: float
    per_class_f1: tuple
    accuracy: float
    macro_auroc: float

    def as_row(self) -> dict:
        row = {"macro_f1": self.macro_f1}
        for name, value in zip(("W", "N1", "N2", "N3", "REM"), self.per_class_f1):
            row[f"f1_{name}"] = value
        row["accuracy"] = self.accuracy
        row["macro_auroc"] = self.macro_auroc
        return row


def confusion_counts(preds: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """5x5 confusion matrix; rows are true classes, columns predictions."""
    return np.bincount(labels * NUM_CLASSES + preds, minlength=NUM_CLASSES**2).reshape(
        NUM_CLASSES, NUM_CLASSES
    )


def f1_scores(preds, labels) -> tuple[np.ndarray, float]:
    """One-vs-rest F1 per class (zero when undefined) and their mean."""
    preds = np.asarray(preds, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    if preds.size == 0:
        raise EmptyInput("no epochs to score")
    if preds.shape != labels.shape:
        raise ValueError("predictions and labels differ in length")
    cm = confusion_counts(preds, labels)
    tp = np.diag(cm).astype(np.float64)
    fp = cm.sum(axis=0) - tp
    fn = cm.sum(axis=1) - tp
    denom = 2 * tp + fp + fn
    with np.errstate(invalid="ignore"):
        f1 = np.where(denom > 0, 2 * tp / np.where(denom > 0, denom, 1), 0.0)
    return f1, float(f1.mean())


def accuracy(preds, labels) -> float:
    preds = np.asarray(preds)
    labels = np.asarray(labels)
    if preds.size == 0:
        raise EmptyInput("no epochs to score")
    if preds.shape != labels.shape:
        raise ValueError("predictions and labels differ in length")
    return float((preds == labels).mean())


def argmax_labels(probs: np.ndarray) -> np.ndarray:
    """Row-wise argmax; ties resolve to the lowest class index."""
    return np.asarray(probs).argmax(axis=-1)


def macro_auroc(probs: np.ndarray, labels: np.ndarray) -> float:
    """Mean one-vs-rest AUROC over the classes present in the labels.

    The per-class area uses the rank statistic with midranks for ties.
    Classes absent from the labels are excluded with a warning.
    """
    probs = np.asarray(probs, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if probs.ndim != 2 or probs.shape[0] != labels.shape[0]:
        raise ValueError("probs must be (N, num_classes) aligned with labels")
    aucs = []
    skipped = []
    for c in range(probs.shape[1]):
        pos = labels == c
        n_pos = int(pos.sum())
        n_neg = len(labels) - n_pos
        if n_pos == 0 or n_neg == 0:
            skipped.append(c)
            continue
        ranks = rankdata(probs[:, c])
        auc = (ranks[pos].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg)
        aucs.append(auc)
    if not aucs:
        raise NoDiscriminableClass("labels contain a single class")
    if skipped:
        warnings.warn(f"AUROC: classes {skipped} absent from labels; excluded")
    return float(np.mean(aucs))


def compute_report(probs: np.ndarray, labels: np.ndarray) -> MetricReport:
    preds = argmax_labels(probs)
    per_class, macro = f1_scores(preds, labels)
    return MetricReport(
        macro_f1=macro,
        per_class_f1=tuple(float(v) for v in per_class),
        accuracy=accuracy(preds, labels),
        macro_auroc=macro_auroc(probs, labels),
    )
