import numpy as np
import pytest

from stagespace.data import EmptySignal, resample


def test_equal_rates_identity():
    rng = np.random.default_rng(0)
    x = rng.normal(size=500)
    y = resample(x, 100.0, 100.0)
    np.testing.assert_array_equal(x, y)
    assert y is not x  # a copy, not an alias


def test_length_formula():
    x = np.zeros(1250)  # 10 s at 125 Hz
    assert len(resample(x, 125.0, 100.0)) == 1000
    assert len(resample(np.zeros(300), 100.0, 50.0)) == 150
    assert len(resample(np.zeros(100), 50.0, 125.0)) == 250


def test_sinusoid_against_analytic_oracle():
    # Oracle: the same 1 Hz sinusoid sampled analytically at 100 Hz.
    src, dst, f = 125.0, 100.0, 1.0
    t_src = np.arange(int(src * 20)) / src
    x = np.sin(2 * np.pi * f * t_src)
    y = resample(x, src, dst)
    t_dst = np.arange(len(y)) / dst
    ref = np.sin(2 * np.pi * f * t_dst)
    # ignore filter edge transients
    core = slice(50, -50)
    corr = np.corrcoef(y[core], ref[core])[0, 1]
    assert corr > 0.999


def test_amplitude_preserved_in_passband():
    # RMS oracle: a unit sinusoid keeps RMS 1/sqrt(2) through the filter.
    src, dst = 125.0, 100.0
    t = np.arange(int(src * 20)) / src
    x = np.sin(2 * np.pi * 10.0 * t)
    y = resample(x, src, dst)
    rms = np.sqrt(np.mean(y[100:-100] ** 2))
    assert abs(rms - 1 / np.sqrt(2)) < 0.01


def test_empty_signal_rejected():
    with pytest.raises(EmptySignal):
        resample(np.array([]), 100.0, 50.0)


def test_bad_rates_rejected():
    with pytest.raises(ValueError):
        resample(np.zeros(10), 0.0, 100.0)
