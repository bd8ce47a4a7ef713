import numpy as np
import pytest

from stagespace.data import InvalidConfig, RawStageLabel, SyntheticConfig, generate_synthetic


def band_power(x: np.ndarray, rate: float, lo: float, hi: float) -> float:
    """Periodogram oracle: mean squared magnitude inside a frequency band."""
    spectrum = np.abs(np.fft.rfft(x)) ** 2
    freqs = np.fft.rfftfreq(len(x), d=1.0 / rate)
    sel = (freqs >= lo) & (freqs <= hi)
    return float(spectrum[sel].mean())


def test_fixed_seed_bit_identical():
    cfg = SyntheticConfig(num_channels=2, num_epochs=20)
    a = generate_synthetic(cfg, seed=11)
    b = generate_synthetic(cfg, seed=11)
    assert a.hypnogram == b.hypnogram
    for ca, cb in zip(a.channels, b.channels):
        np.testing.assert_array_equal(ca.physical, cb.physical)
    c = generate_synthetic(cfg, seed=12)
    assert any(
        not np.array_equal(x.physical, y.physical) for x, y in zip(a.channels, c.channels)
    )


def test_stage_frequencies_match_priors():
    # Empirical frequency oracle over a long recording.
    priors = (0.3, 0.15, 0.25, 0.15, 0.15)
    cfg = SyntheticConfig(num_channels=1, num_epochs=2000, priors=priors)
    rec = generate_synthetic(cfg, seed=3)
    values = [h.value for h in rec.hypnogram]
    for stage, prior in zip(("W", "N1", "N2", "N3", "REM"), priors):
        freq = values.count(stage) / len(values)
        assert abs(freq - prior) <= 0.05, (stage, freq, prior)


def test_deep_sleep_band_power_oracle():
    # N3 epochs must carry more 0.5-2 Hz power than 8-12 Hz power.
    cfg = SyntheticConfig(num_channels=1, num_epochs=400)
    rec = generate_synthetic(cfg, seed=5)
    signal = rec.channels[0].physical
    n = 3000
    n3_epochs = [i for i, h in enumerate(rec.hypnogram) if h is RawStageLabel.N3]
    assert len(n3_epochs) > 20
    hits = 0
    for i in n3_epochs:
        x = signal[i * n : (i + 1) * n]
        if band_power(x, 100.0, 0.5, 2.0) > band_power(x, 100.0, 8.0, 12.0):
            hits += 1
    assert hits / len(n3_epochs) >= 0.95


def test_wake_band_power_oracle():
    cfg = SyntheticConfig(num_channels=1, num_epochs=400)
    rec = generate_synthetic(cfg, seed=6)
    signal = rec.channels[0].physical
    n = 3000
    w_epochs = [i for i, h in enumerate(rec.hypnogram) if h is RawStageLabel.W]
    assert len(w_epochs) > 20
    hits = 0
    for i in w_epochs:
        x = signal[i * n : (i + 1) * n]
        if band_power(x, 100.0, 8.0, 12.0) > band_power(x, 100.0, 0.5, 2.0):
            hits += 1
    assert hits / len(w_epochs) >= 0.95


def test_self_transition_rate():
    cfg = SyntheticConfig(num_channels=1, num_epochs=3000, stickiness=0.8)
    rec = generate_synthetic(cfg, seed=7)
    seq = [h.value for h in rec.hypnogram]
    same = sum(a == b for a, b in zip(seq, seq[1:])) / (len(seq) - 1)
    assert same >= 0.7


def test_artifact_epochs_marked_movement():
    cfg = SyntheticConfig(num_channels=1, num_epochs=300, artifact_fraction=0.1)
    rec = generate_synthetic(cfg, seed=8)
    n_movement = sum(h is RawStageLabel.MOVEMENT for h in rec.hypnogram)
    assert 10 <= n_movement <= 60


def test_invalid_configs_rejected():
    with pytest.raises(InvalidConfig):
        SyntheticConfig(num_channels=0).validate()
    with pytest.raises(InvalidConfig):
        SyntheticConfig(priors=(1.0, 0, 0, 0, 0.5)).validate()
    with pytest.raises(InvalidConfig):
        SyntheticConfig(stickiness=0.5).validate()
