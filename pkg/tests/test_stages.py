import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stagespace.data import EXCLUDED, RawStageLabel, map_labels, read_hypnogram, write_hypnogram

ALL_STAGES = list(RawStageLabel)


def test_n4_merges_into_n3():
    labels, mask = map_labels([RawStageLabel.N4])
    assert labels[0] == 3
    assert not mask[0]


def test_movement_excluded():
    labels, mask = map_labels([RawStageLabel.MOVEMENT])
    assert labels[0] == EXCLUDED
    assert mask[0]


def test_wake_is_class_zero():
    labels, _ = map_labels([RawStageLabel.W])
    assert labels[0] == 0


def test_full_mapping():
    seq = [
        RawStageLabel.W, RawStageLabel.N1, RawStageLabel.N2, RawStageLabel.N3,
        RawStageLabel.N4, RawStageLabel.REM, RawStageLabel.MOVEMENT, RawStageLabel.UNKNOWN,
    ]
    labels, mask = map_labels(seq)
    np.testing.assert_array_equal(labels, [0, 1, 2, 3, 3, 4, EXCLUDED, EXCLUDED])
    np.testing.assert_array_equal(mask, [False] * 6 + [True] * 2)


def test_empty_hypnogram_rejected():
    with pytest.raises(ValueError):
        map_labels([])


@given(st.lists(st.sampled_from(ALL_STAGES), min_size=1, max_size=200))
def test_outputs_always_in_range_and_mask_aligned(seq):
    labels, mask = map_labels(seq)
    assert len(labels) == len(mask) == len(seq)
    valid = (labels >= 0) & (labels <= 4)
    assert np.all(valid | (labels == EXCLUDED))
    np.testing.assert_array_equal(mask, labels == EXCLUDED)


def test_hypnogram_file_round_trip(tmp_path):
    seq = [RawStageLabel.W, RawStageLabel.N4, RawStageLabel.MOVEMENT, RawStageLabel.REM]
    path = tmp_path / "r.hyp"
    write_hypnogram(path, seq)
    assert read_hypnogram(path) == seq


def test_unknown_token_rejected(tmp_path):
    path = tmp_path / "bad.hyp"
    path.write_text("W\nSTAGE9\n")
    with pytest.raises(ValueError, match="STAGE9"):
        read_hypnogram(path)
