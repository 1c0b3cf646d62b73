"""
Seeded white noise, synthetic test signals and the propagation of mean, autocorrelation and PSD through LTI
systems.
"""

import math

import numpy as np
from easydict import EasyDict

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError
from ltitoolbox.model import DiscreteSignal, Distribution, NoiseSpec, SignalComponent, SpectrumFrame
from ltitoolbox.signals import convolve
from ltitoolbox.spectral import dft, frequency_grid
from ltitoolbox.utils import PrintUtil

MASK64 = (1 << 64) - 1


def _splitmix64(seed: int) -> int:
    """Scramble a seed into a nonzero generator state."""
    z = (seed + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return z or 0x9E3779B97F4A7C15


class NoiseGenerator:
    """
    Deterministic xorshift64* stream.

    The seed fully determines the stream on every platform. The state is owned by the caller; `clone()` forks
    the stream.
    """

    _state: int
    _spare: float = None

    def __init__(self, seed: int = 0):
        """Init instance."""
        if not 0 <= int(seed) < 2**64:
            raise ArgumentError(f"Seed must be a 64-bit unsigned integer, got {seed}")
        self._state = _splitmix64(int(seed))

    def clone(self) -> "NoiseGenerator":
        """Copy of the generator; both continue with the same values."""
        other = NoiseGenerator.__new__(NoiseGenerator)
        other._state = self._state
        other._spare = self._spare
        return other

    def next_u64(self) -> int:
        """Next raw 64-bit value."""
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def uniform(self) -> float:
        """Uniform value in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def gauss(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Gaussian value by Box–Muller; every pair of uniforms yields two values."""
        if self._spare is not None:
            z, self._spare = self._spare, None
            return mu + sigma * z
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return mu + sigma * r * math.cos(2.0 * math.pi * u2)


def white_noise(spec: NoiseSpec, n: int, generator: NoiseGenerator = None) -> DiscreteSignal:
    """
    White noise of `n` samples.

    Args:
        spec (NoiseSpec): Seed and distribution.
        n (int): Number of samples.
        generator (NoiseGenerator): Continue this stream instead of starting a new one from `spec.seed`.
    """
    if n < 1:
        raise ArgumentError(f"Need at least one sample, got {n}")
    generator = generator or NoiseGenerator(spec.seed)
    if spec.distribution == Distribution.GAUSSIAN:
        samples = [generator.gauss(spec.mu, spec.sigma) for _ in range(n)]
    else:
        samples = [generator.uniform() for _ in range(n)]
    return DiscreteSignal(samples)


def synthetic_signal(
    t_grid, components: list[SignalComponent], noise: NoiseSpec = None, sample_rate: float = None
) -> DiscreteSignal:
    """
    Sum of Gaussian-modulated tones a·sin(2πft)·exp(-(t-τ)²/b) plus optional white noise.

    The sample rate is taken from the grid spacing unless given.
    """
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if sample_rate is None and len(t) > 1:
        sample_rate = 1.0 / (t[1] - t[0])
    y = np.zeros(len(t))
    for c in components:
        envelope = np.exp(-((t - c.center) ** 2) / c.width) if math.isfinite(c.width) else 1.0
        y += c.amplitude * np.sin(2 * np.pi * c.frequency * t) * envelope
    if noise is not None:
        y += white_noise(noise, len(t)).samples
    return DiscreteSignal(y, sample_rate)


def exercise5_components() -> list[SignalComponent]:
    """Components of the three-tone test signal from the configured presets."""
    preset = EasyDict(config["exercises"]["exercise5"].get(dict))
    return [SignalComponent(c.amplitude, c.frequency, c.center, c.width) for c in preset.components]


def propagate_mean(h: DiscreteSignal, mu_in: float) -> float:
    """Output mean μ·Σh of a system driven by a stationary input of mean μ."""
    return float(mu_in * np.sum(h.samples))


def impulse_autocorrelation(h: DiscreteSignal) -> DiscreteSignal:
    """Deterministic autocorrelation r_hh[k] = Σ h[l]·h[l+k] over all lags."""
    n = len(h)
    r = np.correlate(h.samples, h.samples, mode="full")
    return DiscreteSignal(0.5 * (r + r[::-1]), h.sample_rate, -(n - 1))


def _check_lag_sequence(r: DiscreteSignal, name: str):
    """Reject lag sequences that are not centered on lag 0 or not symmetric."""
    if len(r) % 2 == 0 or r.start_index != -(len(r) - 1) // 2:
        raise ArgumentError(f"{name} must be centered on lag 0 (start_index={r.start_index}, length={len(r)})")
    scale = max(1.0, float(np.max(np.abs(r.samples))))
    if np.max(np.abs(r.samples - r.samples[::-1])) > 1e-9 * scale:
        raise ArgumentError(f"{name} is not symmetric")


def autocorr_propagation(h: DiscreteSignal, r_uu: DiscreteSignal) -> DiscreteSignal:
    """
    Output autocorrelation r_yy = r_uu * r_hh of a system with impulse response `h`.

    Raises:
        ArgumentError: If `r_uu` is not a symmetric lag sequence.
    """
    _check_lag_sequence(r_uu, "Input autocorrelation")
    r_yy = convolve(r_uu, impulse_autocorrelation(h))
    PrintUtil.log(f"Output power r_yy[0] = {r_yy.at(0):.6g} for input power r_uu[0] = {r_uu.at(0):.6g}")
    return r_yy


def psd(r: DiscreteSignal, fs: float = None, n_fft: int = None) -> SpectrumFrame:
    """
    Power spectral density as the Fourier transform of a symmetric lag sequence.

    The lags are wrapped onto a circle of `n_fft` points (default: the sequence length) and transformed
    without normalization; the real part is reported.
    """
    _check_lag_sequence(r, "Lag sequence")
    n_fft = n_fft or len(r)
    if n_fft < len(r):
        raise ArgumentError(f"n_fft={n_fft} is shorter than the lag sequence ({len(r)})")
    circle = np.zeros(n_fft)
    circle[r.indices % n_fft] = r.samples
    values = dft(DiscreteSignal(circle)).bins.real * math.sqrt(n_fft)
    if fs is not None:
        return SpectrumFrame(values, frequency_grid(n_fft, fs), "Hz", "none", fs)
    return SpectrumFrame(values, 2 * np.pi * np.arange(n_fft) / n_fft, "rad/sample", "none")
