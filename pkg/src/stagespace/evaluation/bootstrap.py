"""Empirical bootstrap over test epochs and the 3x3-run comparison protocol.

Score differences are bootstrapped by resampling epochs with
replacement, applying the same index set to both models. A pair of
runs differs significantly when the 95% interval of the resampled
difference excludes zero. Two models compare through all 9 pairs of
their 3 training runs; one is superior when more than the threshold
fraction of pairs is significant with a consistent sign.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data.splits import rng_from_seed
from .inference import ProbabilityMatrix
from .metrics import accuracy, f1_scores


class MismatchedEvaluationSets(ValueError):
    pass


@dataclass
class BootstrapResult:
    point_diff: float
    ci_low: float
    ci_high: float
    n_iterations: int
    significant: bool


@dataclass
class PairwiseSignificance:
    pair_outcomes: list  # 9 entries of (significant, sign) in run-major order
    fraction_significant: float
    threshold: float
    verdict: str  # "A_superior" | "B_superior" | "undecided"


def _macro_f1(preds, labels) -> float:
    return f1_scores(preds, labels)[1]


_METRICS = {"macro_f1": _macro_f1, "accuracy": accuracy}


def pool_runs(runs: list[ProbabilityMatrix]) -> tuple[np.ndarray, np.ndarray]:
    """Concatenate per-recording probabilities and labels."""
    probs = np.concatenate([r.probs for r in runs], axis=0)
    labels = np.concatenate([r.labels for r in runs], axis=0)
    return probs, labels


def _aligned_pools(preds_a, preds_b):
    probs_a, labels_a = pool_runs(preds_a)
    probs_b, labels_b = pool_runs(preds_b)
    if labels_a.shape != labels_b.shape or not np.array_equal(labels_a, labels_b):
        raise MismatchedEvaluationSets("runs were evaluated on different epochs")
    return probs_a.argmax(axis=1), probs_b.argmax(axis=1), labels_a


def bootstrap_diff(preds_a: list[ProbabilityMatrix], preds_b: list[ProbabilityMatrix],
                   metric="macro_f1", n: int = 1000, seed: int = 0) -> BootstrapResult:
    """95% bootstrap interval for metric(A) - metric(B) over test epochs."""
    fn = _METRICS[metric] if isinstance(metric, str) else metric
    a, b, labels = _aligned_pools(preds_a, preds_b)
    size = len(labels)
    point = fn(a, labels) - fn(b, labels)

    diffs = np.empty(n)
    for i in range(n):
        idx = rng_from_seed(seed, stream=i).integers(0, size, size)
        diffs[i] = fn(a[idx], labels[idx]) - fn(b[idx], labels[idx])
    lo, hi = np.percentile(diffs, [2.5, 97.5])
    return BootstrapResult(
        point_diff=float(point),
        ci_low=float(lo),
        ci_high=float(hi),
        n_iterations=n,
        significant=bool(lo > 0 or hi < 0),
    )


def bootstrap_score(preds: list[ProbabilityMatrix], metric="macro_f1",
                    n: int = 1000, seed: int = 0) -> tuple[float, float, float]:
    """Bootstrap (point, ci_low, ci_high) of a single run's score."""
    fn = _METRICS[metric] if isinstance(metric, str) else metric
    probs, labels = pool_runs(preds)
    a = probs.argmax(axis=1)
    size = len(labels)
    values = np.empty(n)
    for i in range(n):
        idx = rng_from_seed(seed, stream=i).integers(0, size, size)
        values[i] = fn(a[idx], labels[idx])
    lo, hi = np.percentile(values, [2.5, 97.5])
    return float(fn(a, labels)), float(lo), float(hi)


def pairwise_significance(runs_a, runs_b, threshold: float = 0.6,
                          metric="macro_f1", n: int = 1000,
                          seed: int = 0) -> PairwiseSignificance:
    """Compare two models through all pairs of their training runs.

    runs_a and runs_b each hold one prediction set (list of
    ProbabilityMatrix) per training run; the canonical protocol uses 3
    runs per model, 9 pairs in total.
    """
    outcomes = []
    n_pos = n_neg = 0
    for i, run_a in enumerate(runs_a):
        for j, run_b in enumerate(runs_b):
            pair_seed = seed * len(runs_a) * len(runs_b) + i * len(runs_b) + j
            result = bootstrap_diff(run_a, run_b, metric=metric, n=n, seed=pair_seed)
            sign = 0
            if result.significant:
                sign = 1 if result.ci_low > 0 else -1
                n_pos += sign > 0
                n_neg += sign < 0
            outcomes.append((result.significant, sign))

    total = len(outcomes)
    if n_pos / total > threshold:
        verdict = "A_superior"
        fraction = n_pos / total
    elif n_neg / total > threshold:
        verdict = "B_superior"
        fraction = n_neg / total
    else:
        verdict = "undecided"
        fraction = max(n_pos, n_neg) / total
    return PairwiseSignificance(
        pair_outcomes=outcomes,
        fraction_significant=fraction,
        threshold=threshold,
        verdict=verdict,
    )


@dataclass
class UncertaintySummary:
    median: float
    systematic: float  # interquartile range across training runs
    statistical: float  # median bootstrap half-width

    def formatted(self, decimals: int = 3) -> str:
        return (
            f"{self.median:.{decimals}f}"
            f"±{self.systematic:.{decimals}f}"
            f"±{self.statistical:.{decimals}f}"
        )


def report_uncertainty(run_scores, half_widths) -> UncertaintySummary:
    """Median score, IQR across runs, median bootstrap half-width."""
    if len(run_scores) != 3 or len(half_widths) != 3:
        raise ValueError("the protocol uses exactly 3 training runs")
    q25, q75 = np.percentile(run_scores, [25, 75])
    return UncertaintySummary(
        median=float(np.median(run_scores)),
        systematic=float(q75 - q25),
        statistical=float(np.median(half_widths)),
    )


def summarize_runs(runs: list, metric="macro_f1", n: int = 1000,
                   seed: int = 0) -> UncertaintySummary:
    """Full uncertainty summary from 3 runs' prediction sets."""
    scores, widths = [], []
    for k, preds in enumerate(runs):
        point, lo, hi = bootstrap_score(preds, metric=metric, n=n, seed=seed * 3 + k)
        scores.append(point)
        widths.append((hi - lo) / 2)
    return report_uncertainty(scores, widths)
