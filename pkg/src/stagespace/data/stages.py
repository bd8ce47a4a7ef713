"""Sleep stage vocabulary and the canonical 5-class label scheme.

Raw hypnograms use the eight-token scoring vocabulary (W, N1-N4, REM,
MOVEMENT, UNKNOWN). Downstream everything operates on five classes:
W=0, N1=1, N2=2, N3=3 (N4 merged in), REM=4. MOVEMENT and UNKNOWN
epochs are excluded from training and evaluation.
"""

from __future__ import annotations

import enum

import numpy as np


class RawStageLabel(str, enum.Enum):
    W = "W"
    N1 = "N1"
    N2 = "N2"
    N3 = "N3"
    N4 = "N4"
    REM = "REM"
    MOVEMENT = "MOVEMENT"
    UNKNOWN = "UNKNOWN"


# Canonical class indices.
CLASS_NAMES = ("W", "N1", "N2", "N3", "REM")
NUM_CLASSES = 5
EXCLUDED = -1

_CANONICAL = {
    RawStageLabel.W: 0,
    RawStageLabel.N1: 1,
    RawStageLabel.N2: 2,
    RawStageLabel.N3: 3,
    RawStageLabel.N4: 3,  # N4 merged into N3
    RawStageLabel.REM: 4,
    RawStageLabel.MOVEMENT: EXCLUDED,
    RawStageLabel.UNKNOWN: EXCLUDED,
}


def parse_stage_token(token: str) -> RawStageLabel:
    """Parse one hypnogram text token. Raises ValueError on unknown tokens."""
    try:
        return RawStageLabel(token.strip())
    except ValueError:
        raise ValueError(f"unknown stage token: {token!r}") from None


def map_labels(hypnogram) -> tuple[np.ndarray, np.ndarray]:
    """Map raw stage labels to canonical class indices.

    Returns (labels, exclusion_mask): labels is int64 with values in
    {0..4} or EXCLUDED (-1); exclusion_mask is True where the epoch is
    MOVEMENT or UNKNOWN. Both have the same length as the input.
    """
    hypnogram = list(hypnogram)
    if not hypnogram:
        raise ValueError("empty hypnogram")
    labels = np.array([_CANONICAL[RawStageLabel(h)] for h in hypnogram], dtype=np.int64)
    mask = labels == EXCLUDED
    return labels, mask


def read_hypnogram(path) -> list[RawStageLabel]:
    """Read a per-epoch hypnogram file: one stage token per line."""
    with open(path, "r", encoding="ascii") as f:
        tokens = [line.strip() for line in f if line.strip()]
    return [parse_stage_token(t) for t in tokens]


def write_hypnogram(path, labels) -> None:
    with open(path, "w", encoding="ascii") as f:
        for lab in labels:
            f.write(RawStageLabel(lab).value + "\n")
