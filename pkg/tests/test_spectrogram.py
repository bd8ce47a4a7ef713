import numpy as np
import pytest

from stagespace.features import (
    EpochTensor,
    STFTConfig,
    compute_spectrogram,
    frame_signal,
    hamming_window,
)


def naive_frame_dft(frame: np.ndarray, cfg: STFTConfig) -> np.ndarray:
    """O(n^2) oracle: direct one-sided DFT of one windowed, padded frame."""
    win = 0.54 - 0.46 * np.cos(2 * np.pi * np.arange(cfg.window_length) / cfg.window_length)
    padded = np.zeros(cfg.fft_size)
    padded[: cfg.window_length] = frame * win
    bins = cfg.fft_size // 2 + 1
    out = np.zeros(bins, dtype=complex)
    for k in range(bins):
        for n in range(cfg.fft_size):
            out[k] += padded[n] * np.exp(-2j * np.pi * k * n / cfg.fft_size)
    return np.log(np.abs(out) + cfg.log_floor)


def epoch_tensor(data: np.ndarray) -> EpochTensor:
    e = data.shape[0]
    return EpochTensor(data=data.astype(np.float32), labels=np.zeros(e, dtype=np.int64))


def test_output_shape_contract():
    rng = np.random.default_rng(0)
    for e in (1, 15):
        for c in (1, 3, 5):
            x = epoch_tensor(rng.normal(size=(e, c, 3000)))
            st = compute_spectrogram(x)
            assert st.data.shape == (e, c, 29, 129)


def test_zero_signal_hits_log_floor():
    cfg = STFTConfig()
    st = compute_spectrogram(epoch_tensor(np.zeros((1, 1, 3000))), cfg)
    np.testing.assert_allclose(st.data, np.log(cfg.log_floor), rtol=1e-6)


def test_pure_10hz_peaks_at_bin_26():
    t = np.arange(3000) / 100.0
    x = np.sin(2 * np.pi * 10.0 * t)[None, None, :]
    st = compute_spectrogram(epoch_tensor(x))
    # bin width 100/256 Hz; 10 Hz -> 25.6 -> nearest one-sided bin is 26
    peaks = st.data[0, 0].argmax(axis=-1)
    np.testing.assert_array_equal(peaks, np.full(29, 26))


def test_random_frame_matches_naive_dft_oracle():
    rng = np.random.default_rng(7)
    cfg = STFTConfig()
    signal = rng.normal(size=(1, 1, 3000))
    st = compute_spectrogram(epoch_tensor(signal), cfg)
    for frame_idx in rng.integers(0, 29, size=3):
        frame = signal[0, 0, frame_idx * cfg.hop : frame_idx * cfg.hop + cfg.window_length]
        oracle = naive_frame_dft(frame, cfg)
        np.testing.assert_allclose(st.data[0, 0, frame_idx], oracle, rtol=1e-6, atol=1e-6)


def test_log_monotone_under_scaling():
    rng = np.random.default_rng(8)
    x = rng.normal(size=(1, 2, 3000))
    cfg = STFTConfig()
    base = compute_spectrogram(epoch_tensor(x), cfg)
    scaled = compute_spectrogram(epoch_tensor(3.0 * x), cfg)
    mask = base.data >= np.log(2 * cfg.log_floor)  # pre-log magnitude >= floor
    assert np.all(scaled.data[mask] > base.data[mask])


def test_labels_pass_through():
    data = np.random.default_rng(9).normal(size=(4, 1, 3000))
    et = EpochTensor(data=data.astype(np.float32), labels=np.array([0, 3, 2, 4]))
    st = compute_spectrogram(et)
    np.testing.assert_array_equal(st.labels, et.labels)
    assert st.labels is not et.labels


def test_frame_layout():
    x = np.arange(3000.0)[None, None, :]
    frames = frame_signal(x, 200, 100)
    assert frames.shape == (1, 1, 29, 200)
    np.testing.assert_array_equal(frames[0, 0, 0], np.arange(200.0))
    np.testing.assert_array_equal(frames[0, 0, 1], np.arange(100.0, 300.0))
    np.testing.assert_array_equal(frames[0, 0, 28], np.arange(2800.0, 3000.0))


def test_hamming_convention():
    win = hamming_window(200)
    assert win[0] == pytest.approx(0.08)
    # periodic convention: w[k] = 0.54 - 0.46 cos(2 pi k / 200)
    assert win[100] == pytest.approx(1.0)
    assert win[50] == pytest.approx(0.54)


def test_invalid_config_rejected():
    with pytest.raises(ValueError):
        STFTConfig(window_length=300, fft_size=256).validate()
    with pytest.raises(ValueError):
        STFTConfig(hop=300).validate()
