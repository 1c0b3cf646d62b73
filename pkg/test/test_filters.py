"""Test module for FIR/IIR design and filtering."""

import math

import numpy as np
import pytest
import scipy.signal

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError, NumericalError
from ltitoolbox.filters import (
    FilterKind,
    apply,
    butterworth,
    edge_samples,
    filter_kind,
    firwin,
    highpass_complement,
    ideal_lowpass_ir,
    spectral_reverse,
    window,
    zero_phase,
)
from ltitoolbox.lti import evaluate, freq_response, is_stable, zpk
from ltitoolbox.model import DiscreteSignal, Domain, RationalTransferFunction, StabilityClass
from ltitoolbox.signals import cross_correlate
from ltitoolbox.spectral import dtft

config.set_file("test/config/config.yaml")

WINDOWS = ["rectangular", "hanning", "hamming", "blackman"]
SCIPY_WINDOWS = {"rectangular": "boxcar", "hanning": "hann", "hamming": "hamming", "blackman": "blackman"}


@pytest.fixture(scope="session")
def lowpass_511():
    """The 511-tap Hamming low-pass at 200 Hz for 2 kHz sampling."""
    return firwin(511, 200.0, 2000.0, "hamming")


def test_ideal_lowpass_ir():
    """Test the ideal impulse response."""
    all_pass = ideal_lowpass_ir(np.pi, 7)
    expected = np.zeros(7)
    expected[3] = 1.0
    np.testing.assert_allclose(all_pass, expected, atol=1e-15)
    h = ideal_lowpass_ir(np.pi / 5, 5)
    assert h[2] == pytest.approx(0.2)
    np.testing.assert_array_equal(h, h[::-1])
    with pytest.raises(ArgumentError):
        ideal_lowpass_ir(0.0, 5)
    with pytest.raises(ArgumentError):
        ideal_lowpass_ir(4.0, 5)


def test_window():
    """Test window values and symmetry."""
    np.testing.assert_allclose(window("hamming", 5), [0.08, 0.54, 1.0, 0.54, 0.08], atol=1e-15)
    np.testing.assert_array_equal(window("rectangular", 3), [1, 1, 1])
    for kind in WINDOWS:
        w = window(kind, 10)
        np.testing.assert_array_equal(w, w[::-1])
        expected = scipy.signal.get_window(SCIPY_WINDOWS[kind], 10, fftbins=False)
        np.testing.assert_allclose(w, expected, atol=1e-14)
    with pytest.raises(ArgumentError):
        window("kaiser", 5)
    with pytest.raises(ArgumentError):
        window("hamming", 1)


def test_firwin_hand_check():
    """Test the five-tap design against a hand computation."""
    fir = firwin(5, 10.0, 1000.0, "hamming")
    theta = 2 * math.pi * 10 / 1000
    taps = []
    for k in range(5):
        m = k - 2
        ideal = theta / math.pi if m == 0 else math.sin(m * theta) / (math.pi * m)
        taps.append(ideal * (0.54 - 0.46 * math.cos(2 * math.pi * k / 4)))
    expected = np.array(taps) / sum(taps)
    np.testing.assert_allclose(fir.taps, expected, atol=1e-10)
    assert fir.group_delay == 2


def test_firwin_matches_scipy():
    """Test the design against scipy.signal.firwin for all windows."""
    for kind in WINDOWS:
        expected = scipy.signal.firwin(101, 150.0, window=SCIPY_WINDOWS[kind], fs=1000.0)
        np.testing.assert_allclose(firwin(101, 150.0, 1000.0, kind).taps, expected, atol=1e-12)


def test_firwin_errors():
    """Test invalid orders and cut-offs."""
    with pytest.raises(ArgumentError):
        firwin(4, 10.0, 1000.0)
    with pytest.raises(ArgumentError):
        firwin(5, 500.0, 1000.0)
    with pytest.raises(ArgumentError):
        firwin(5, 0.0, 1000.0)


def test_firwin_dc_gain_and_stop_band(lowpass_511):
    """Test unit DC gain and stop-band attenuation."""
    h = DiscreteSignal(lowpass_511.taps)
    assert abs(dtft(h, [0.0]).bins[0]) == pytest.approx(1.0, abs=1e-12)
    theta_c = 2 * np.pi * 200 / 2000
    thetas = np.linspace(2 * theta_c, np.pi, 400)
    assert np.max(np.abs(dtft(h, thetas).bins)) < 0.01


def test_linear_phase(lowpass_511):
    """Test that the phase equals -αθ modulo π where the magnitude is not negligible."""
    alpha = lowpass_511.group_delay
    thetas = np.linspace(0.01, np.pi, 300)
    response = dtft(DiscreteSignal(lowpass_511.taps), thetas).bins
    mask = np.abs(response) > 1e-3
    # the delay-compensated response must be real
    compensated = response * np.exp(1j * alpha * thetas)
    assert np.max(np.abs(compensated[mask].imag)) < 1e-9 * np.max(np.abs(response))


def test_highpass_complement():
    """Test δ_α minus the taps and the complementarity identity."""
    taps = np.array([0.25, 0.5, 0.25])
    np.testing.assert_allclose(highpass_complement(taps), [-0.25, 0.5, -0.25])
    fir = firwin(31, 100.0, 1000.0)
    comp = highpass_complement(fir)
    total = fir.taps + comp
    expected = np.zeros(31)
    expected[15] = 1.0
    np.testing.assert_allclose(total, expected, atol=1e-15)
    thetas = np.linspace(0, np.pi, 50)
    lhs = dtft(DiscreteSignal(fir.taps), thetas).bins + dtft(DiscreteSignal(comp), thetas).bins
    np.testing.assert_allclose(lhs, np.exp(-1j * 15 * thetas), atol=1e-10)


def test_spectral_reverse_at_quarter_rate():
    """Test that modulation and complement agree in magnitude for a design at fs/4."""
    fir = firwin(101, 250.0, 1000.0)
    np.testing.assert_array_equal(spectral_reverse(np.array([1.0, 2.0, 3.0])), [1.0, -2.0, 3.0])
    thetas = np.linspace(0, np.pi, 256)
    reversed_mag = np.abs(dtft(DiscreteSignal(spectral_reverse(fir)), thetas).bins)
    complement_mag = np.abs(dtft(DiscreteSignal(highpass_complement(fir)), thetas).bins)
    # the two high-passes differ only through the center tap 2h[α] - 1
    deviation = abs(1 - 2 * fir.taps[50])
    assert deviation < 0.01
    assert np.max(np.abs(reversed_mag - complement_mag)) <= deviation + 1e-12


def test_butterworth_half_power():
    """Test the half-power point, DC gain and stability for orders 1 to 11."""
    for n in range(1, 12):
        tf = butterworth(n, 200.0, 2000.0)
        assert is_stable(tf) == StabilityClass.STABLE
        assert np.all(np.abs(zpk(tf).poles) < 1)
        assert abs(evaluate(tf, 1.0)) == pytest.approx(1.0, abs=1e-9)
        at_fc = abs(evaluate(tf, np.exp(2j * np.pi * 200.0 / 2000.0)))
        assert at_fc == pytest.approx(1 / math.sqrt(2), abs=1e-6)
    quarter = butterworth(1, 250.0, 1000.0)
    assert abs(evaluate(quarter, 1j)) == pytest.approx(0.7071, abs=1e-4)


def test_butterworth_matches_scipy():
    """Test the coefficients against scipy.signal.butter."""
    for n in (1, 2, 5, 8):
        tf = butterworth(n, 120.0, 1000.0)
        b, a = scipy.signal.butter(n, 120.0, fs=1000.0)
        np.testing.assert_allclose(tf.b / tf.a[0], b, atol=1e-10)
        np.testing.assert_allclose(tf.a / tf.a[0], a, atol=1e-10)


def test_butterworth_monotone():
    """Test that the magnitude does not ripple."""
    tf = butterworth(11, 200.0, 2000.0)
    grid = np.linspace(0, np.pi * (1 - 1 / 1024), 1024)
    magnitude = freq_response(tf, grid).magnitude()
    assert np.all(np.diff(magnitude) <= 1e-12)


def test_butterworth_errors():
    """Test invalid orders and cut-offs."""
    with pytest.raises(NumericalError):
        butterworth(21, 100.0, 1000.0)
    with pytest.raises(ArgumentError):
        butterworth(0, 100.0, 1000.0)
    with pytest.raises(ArgumentError):
        butterworth(4, 600.0, 1000.0)


def test_apply():
    """Test causal filtering."""
    u = DiscreteSignal([1.0, 2.0, 3.0], 10.0)
    np.testing.assert_array_equal(apply(np.array([1.0]), u).samples, u.samples)
    np.testing.assert_array_equal(apply(np.array([1.0, 1.0]), u).samples, [1.0, 3.0, 5.0])
    tf = RationalTransferFunction([1.0], [1.0, -0.5], Domain.Z, 0.1)
    np.testing.assert_allclose(apply(tf, u).samples, [1.0, 2.5, 4.25])
    assert filter_kind(tf) == FilterKind.IIR
    assert filter_kind(np.ones(3)) == FilterKind.FIR
    with pytest.raises(ArgumentError):
        apply(RationalTransferFunction([1.0], [1.0, 1.0], Domain.S), u)


def test_zero_phase_fir_tone():
    """Test that a tone below the cut-off passes without phase shift."""
    fs = 1000.0
    fir = firwin(101, 100.0, fs)
    t = np.arange(2000) / fs
    u = DiscreteSignal(np.sin(2 * np.pi * 20.0 * t), fs)
    y = zero_phase(fir, u)
    interior = slice(200, 1800)
    np.testing.assert_allclose(y.samples[interior], u.samples[interior], atol=0.01)
    r = cross_correlate(DiscreteSignal(u.samples[interior]), DiscreteSignal(y.samples[interior]), 10)
    assert int(np.argmax(r.samples)) + r.start_index == 0
    assert edge_samples(fir) == 50


def test_zero_phase_fir_shift():
    """Test that the FIR output is the full convolution advanced by the group delay."""
    u = DiscreteSignal(np.arange(10.0))
    taps = np.array([0.25, 0.5, 0.25])
    expected = np.convolve(u.samples, taps)[1:11]
    np.testing.assert_array_equal(zero_phase(taps, u).samples, expected)
    with pytest.raises(ArgumentError):
        zero_phase(np.array([0.5, 0.5]), u)


def test_zero_phase_iir():
    """Test forward-backward filtering of constants and against scipy.signal.filtfilt in the interior."""
    tf = butterworth(4, 50.0, 1000.0)
    constant = DiscreteSignal(np.full(4096, 3.0), 1000.0)
    y = zero_phase(tf, constant)
    np.testing.assert_allclose(y.samples[1000:3000], 3.0, atol=1e-6)
    assert edge_samples(tf) == 15

    rng = np.random.default_rng(3)
    u = DiscreteSignal(rng.normal(size=4096), 1000.0)
    expected = scipy.signal.filtfilt(tf.b, tf.a, u.samples)
    np.testing.assert_allclose(zero_phase(tf, u).samples[1000:3000], expected[1000:3000], atol=1e-8)


def test_zero_phase_iir_errors():
    """Test unstable filters and short signals."""
    unstable = RationalTransferFunction([1.0], [1.0, -1.5], Domain.Z, 0.001)
    with pytest.raises(ArgumentError):
        zero_phase(unstable, DiscreteSignal(np.ones(100)))
    with pytest.raises(ArgumentError):
        zero_phase(butterworth(4, 50.0, 1000.0), DiscreteSignal(np.ones(10)))
