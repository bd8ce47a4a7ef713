import os

import numpy as np

from .. import tensorio
from .bootstrap import (
    BootstrapResult,
    MismatchedEvaluationSets,
    PairwiseSignificance,
    UncertaintySummary,
    bootstrap_diff,
    bootstrap_score,
    pairwise_significance,
    pool_runs,
    report_uncertainty,
    summarize_runs,
)
from .inference import (
    ProbabilityMatrix,
    coverage_counts,
    predict_consecutive,
    sliding_window_predict,
)
from .metrics import (
    EmptyInput,
    MetricReport,
    NoDiscriminableClass,
    accuracy,
    argmax_labels,
    compute_report,
    confusion_counts,
    f1_scores,
    macro_auroc,
)


def save_predictions(dir_path, matrices: list[ProbabilityMatrix]) -> None:
    """One tensor container per recording: (L, 5) probabilities + labels."""
    os.makedirs(dir_path, exist_ok=True)
    for pm in matrices:
        path = os.path.join(dir_path, f"{pm.recording_id}.stt")
        tensorio.write_tensor(
            path,
            pm.probs.astype(np.float64),
            {"recording_id": pm.recording_id, "labels": pm.labels.tolist()},
        )


def load_predictions(dir_path) -> list[ProbabilityMatrix]:
    matrices = []
    for name in sorted(os.listdir(dir_path)):
        if not name.endswith(".stt"):
            continue
        probs, meta = tensorio.read_tensor(os.path.join(dir_path, name), with_meta=True)
        matrices.append(
            ProbabilityMatrix(
                probs=probs,
                labels=np.asarray(meta["labels"], dtype=np.int64),
                recording_id=meta.get("recording_id", name[:-4]),
            )
        )
    return matrices


__all__ = [
    "BootstrapResult",
    "EmptyInput",
    "MetricReport",
    "MismatchedEvaluationSets",
    "NoDiscriminableClass",
    "PairwiseSignificance",
    "ProbabilityMatrix",
    "UncertaintySummary",
    "accuracy",
    "argmax_labels",
    "bootstrap_diff",
    "bootstrap_score",
    "compute_report",
    "confusion_counts",
    "coverage_counts",
    "f1_scores",
    "load_predictions",
    "macro_auroc",
    "pairwise_significance",
    "pool_runs",
    "predict_consecutive",
    "report_uncertainty",
    "save_predictions",
    "sliding_window_predict",
    "summarize_runs",
]
