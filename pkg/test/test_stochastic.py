"""Test module for noise generation and second-order statistics of LTI outputs."""

import math

import numpy as np
import pytest

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError
from ltitoolbox.filters import apply, firwin, highpass_complement
from ltitoolbox.lti import impulse_response_z, simulate
from ltitoolbox.model import DiscreteSignal, Distribution, Domain, NoiseSpec, RationalTransferFunction, SignalComponent
from ltitoolbox.signals import autocorrelate
from ltitoolbox.spectral import dtft
from ltitoolbox.stochastic import (
    NoiseGenerator,
    autocorr_propagation,
    exercise5_components,
    impulse_autocorrelation,
    propagate_mean,
    psd,
    synthetic_signal,
    white_noise,
)

config.set_file("test/config/config.yaml")


def test_generator_is_deterministic():
    """Test that equal seeds give equal streams and different seeds different ones."""
    a = white_noise(NoiseSpec(42), 100).samples
    b = white_noise(NoiseSpec(42), 100).samples
    c = white_noise(NoiseSpec(43), 100).samples
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.all((a >= 0) & (a < 1))
    # seed zero is a valid stream
    assert np.std(white_noise(NoiseSpec(0), 100).samples) > 0


def test_generator_clone_and_continuation():
    """Test that a clone repeats the stream and a shared generator continues it."""
    generator = NoiseGenerator(7)
    generator.gauss()
    fork = generator.clone()
    assert [generator.gauss() for _ in range(5)] == [fork.gauss() for _ in range(5)]
    first = white_noise(NoiseSpec(9), 10, NoiseGenerator(9)).samples
    shared = NoiseGenerator(9)
    head = white_noise(NoiseSpec(9), 4, shared).samples
    joined = np.concatenate((head, white_noise(NoiseSpec(9), 6, shared).samples))
    np.testing.assert_array_equal(first, joined)
    with pytest.raises(ArgumentError):
        NoiseGenerator(-1)
    with pytest.raises(ArgumentError):
        white_noise(NoiseSpec(1), 0)


def test_uniform_moments():
    """Test mean and variance of the uniform stream."""
    u = white_noise(NoiseSpec(1), 100_000).samples
    assert np.mean(u) == pytest.approx(0.5, abs=0.01)
    assert np.var(u) == pytest.approx(1 / 12, abs=0.005)


def test_gaussian_moments():
    """Test mean and standard deviation of the Gaussian stream."""
    spec = NoiseSpec(5, Distribution.GAUSSIAN, 1.5, 0.2)
    g = white_noise(spec, 100_000).samples
    assert np.mean(g) == pytest.approx(1.5, abs=0.005)
    assert np.std(g) == pytest.approx(0.2, abs=0.005)


def test_synthetic_signal():
    """Test pure and modulated tones and the sample rate taken from the grid."""
    t = np.arange(1000) / 1000.0
    tone = synthetic_signal(t, [SignalComponent(2.0, 5.0)])
    assert tone.sample_rate == pytest.approx(1000.0)
    np.testing.assert_allclose(tone.samples, 2 * np.sin(2 * np.pi * 5 * t), atol=1e-12)
    pulse = synthetic_signal(t, [SignalComponent(1.0, 50.0, 0.5, 0.01)])
    assert np.max(np.abs(pulse.samples[:100])) < 1e-6
    assert np.max(np.abs(pulse.samples)) == pytest.approx(1.0, abs=0.01)
    noisy = synthetic_signal(t, [SignalComponent(2.0, 5.0)], NoiseSpec.gaussian(3, 0.0, 0.2))
    assert np.std(noisy.samples - tone.samples) == pytest.approx(0.2, abs=0.02)


def test_exercise5_components():
    """Test the three configured components."""
    components = exercise5_components()
    assert [c.frequency for c in components] == [1.0, 20.0, 90.0]
    assert components[0].amplitude == 2.0
    assert math.isinf(components[2].width)


def test_propagate_mean():
    """Test the output mean μ·Σh."""
    assert propagate_mean(DiscreteSignal([0.5, 0.25]), 2.0) == pytest.approx(1.5)
    assert propagate_mean(DiscreteSignal([1.0, -1.0]), 3.0) == 0.0


def test_filtered_uniform_mean():
    """Test μ·Σh against filtered uniform noise, and a zero mean behind the complementary high-pass."""
    fir = firwin(31, 50.0, 1000.0)
    y = apply(fir, white_noise(NoiseSpec(29), 100_000)).samples[len(fir.taps) :]
    expected = propagate_mean(DiscreteSignal(fir.taps), 0.5)
    assert expected == pytest.approx(0.5)
    assert np.mean(y) == pytest.approx(expected, abs=0.01)
    assert propagate_mean(DiscreteSignal(highpass_complement(fir)), 3.0) == pytest.approx(0.0, abs=1e-12)


def test_impulse_autocorrelation():
    """Test r_hh for a two-tap average and its symmetry."""
    r = impulse_autocorrelation(DiscreteSignal([1.0, 1.0]))
    assert r.start_index == -1
    np.testing.assert_array_equal(r.samples, [1.0, 2.0, 1.0])
    r = impulse_autocorrelation(DiscreteSignal([1.0, 2.0, -0.5, 0.3]))
    np.testing.assert_array_equal(r.samples, r.samples[::-1])
    assert r.samples[3] == pytest.approx(1 + 4 + 0.25 + 0.09)


def test_white_input_propagation():
    """Test that white input reproduces σ²·r_hh."""
    h = DiscreteSignal([1.0, 1.0])
    white = DiscreteSignal([4.0], start_index=0)
    r_yy = autocorr_propagation(h, white)
    assert r_yy.start_index == -1
    np.testing.assert_allclose(r_yy.samples, [4.0, 8.0, 4.0])
    assert r_yy.at(0) == 8.0
    assert r_yy.at(2) == 0.0


def test_propagation_matches_monte_carlo():
    """Test r_yy[0] = 2 for unit white noise through a two-tap sum."""
    u = white_noise(NoiseSpec.gaussian(17, 0.0, 1.0), 200_000)
    y = simulate(RationalTransferFunction([1.0, 1.0], [1.0], Domain.Z, 1.0), u)
    r = autocorrelate(y, 2)
    assert r.samples[2] == pytest.approx(2.0, abs=0.05)
    assert r.samples[3] == pytest.approx(1.0, abs=0.05)
    assert r.samples[4] == pytest.approx(0.0, abs=0.05)


def test_autocorr_propagation_rejects_asymmetric_input():
    """Test the lag sequence checks."""
    h = DiscreteSignal([1.0])
    with pytest.raises(ArgumentError):
        autocorr_propagation(h, DiscreteSignal([1.0, 2.0, 3.0], start_index=-1))
    with pytest.raises(ArgumentError):
        autocorr_propagation(h, DiscreteSignal([1.0, 2.0, 1.0]))
    with pytest.raises(ArgumentError):
        psd(DiscreteSignal([1.0, 2.0], start_index=-1))


def test_psd():
    """Test the PSD of white noise, of the two-tap sum and the total power identity."""
    np.testing.assert_allclose(psd(DiscreteSignal([3.0])).bins.real, [3.0])
    r = impulse_autocorrelation(DiscreteSignal([1.0, 1.0]))
    spectrum = psd(r, n_fft=8)
    thetas = 2 * np.pi * np.arange(8) / 8
    np.testing.assert_allclose(spectrum.bins.real, 2 + 2 * np.cos(thetas), atol=1e-12)
    squared = np.abs(dtft(DiscreteSignal([1.0, 1.0]), thetas).bins) ** 2
    np.testing.assert_allclose(spectrum.bins.real, squared, atol=1e-12)
    # the mean of the PSD over the circle is r[0]
    assert np.mean(spectrum.bins.real) == pytest.approx(2.0)
    assert np.all(spectrum.bins.real >= -1e-12)
    in_hz = psd(r, fs=100.0, n_fft=4)
    assert in_hz.unit == "Hz"
    np.testing.assert_allclose(in_hz.grid, [0, 25, 50, 75])
    with pytest.raises(ArgumentError):
        psd(r, n_fft=2)


def test_psd_of_output_is_product():
    """Test S_yy = S_hh·S_uu for colored input when the lags fit on the circle."""
    h = DiscreteSignal(np.random.default_rng(13).normal(size=12))
    r_uu = impulse_autocorrelation(DiscreteSignal([1.0, -0.4, 0.2]))
    r_yy = autocorr_propagation(h, r_uu)
    assert len(r_yy) == 27
    assert r_yy.at(0) == pytest.approx(np.dot(r_uu.samples, impulse_autocorrelation(h).samples[9:14]))
    s_hh = psd(impulse_autocorrelation(h), n_fft=64).bins
    np.testing.assert_allclose(psd(r_yy, n_fft=64).bins, s_hh * psd(r_uu, n_fft=64).bins, atol=1e-8)


def test_output_is_stationary():
    """Test that the sample mean of a filtered white stream agrees between halves."""
    u = white_noise(NoiseSpec(23), 100_000)
    tf = RationalTransferFunction([0.5], [1.0, -0.5], Domain.Z, 1.0)
    y = simulate(tf, u).samples[100:]
    halves = np.array_split(y, 2)
    # AR(1) stream: variance (0.25/12)/0.75, lag-one correlation 0.5
    sigma = math.sqrt((0.25 / 12) / 0.75 * 3 / (len(halves[0])))
    assert abs(np.mean(halves[0]) - np.mean(halves[1])) < 4 * math.sqrt(2) * sigma
    assert np.mean(y) == pytest.approx(propagate_mean(impulse_response_z(tf, 60), 0.5), abs=0.01)


def test_white_noise_is_stationary():
    """Test that mean and short-lag autocorrelation agree between two halves of one Gaussian stream."""
    stream = white_noise(NoiseSpec.gaussian(31, 0.0, 1.0), 200_000).samples
    halves = [DiscreteSignal(s) for s in np.array_split(stream, 2)]
    n = len(halves[0])
    # standard error of a difference of two independent half-stream estimates
    assert abs(np.mean(halves[0].samples) - np.mean(halves[1].samples)) < 3 * math.sqrt(2 / n)
    first, second = autocorrelate(halves[0], 2), autocorrelate(halves[1], 2)
    assert abs(first.at(0) - second.at(0)) < 3 * math.sqrt(4 / n)
    for lag in (1, 2):
        assert abs(first.at(lag) - second.at(lag)) < 3 * math.sqrt(2 / n)
