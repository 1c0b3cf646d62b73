"""
Unitary DFT/IDFT, radix-2 FFT, DTFT evaluation and frequency-axis bookkeeping.

The discrete transforms use the unitary 1/√n factor in both directions, so the transform preserves the
signal norm and the convolution theorem picks up a factor √n.
"""

import numpy as np

from ltitoolbox.errors import ArgumentError, DataError
from ltitoolbox.model import DiscreteSignal, SpectrumFrame
from ltitoolbox.utils import NumUtil, PrintUtil, Stopwatch

# Rows of the DFT matrix computed at once; bounds memory for long signals.
DFT_BLOCK_ROWS = 256


def next_power_of_two(n: int) -> int:
    """Smallest power of two greater or equal to `n`."""
    return NumUtil.next_power_of_two(n)


def frequency_grid(n_t: int, fs: float) -> np.ndarray:
    """Bin frequencies f_n = n·fs/n_t in Hz for n in [0, n_t-1]."""
    if n_t < 1:
        raise ArgumentError(f"Need at least one bin, got {n_t}")
    if not fs > 0:
        raise ArgumentError(f"Sample rate must be positive, got {fs}")
    return np.arange(n_t) * fs / n_t


def _frame(bins: np.ndarray, sample_rate: float | None) -> SpectrumFrame:
    n = len(bins)
    if sample_rate is not None:
        return SpectrumFrame(bins, frequency_grid(n, sample_rate), "Hz", "unitary", sample_rate)
    return SpectrumFrame(bins, 2 * np.pi * np.arange(n) / n, "rad/sample", "unitary", None)


def _naive_dft(x: np.ndarray, sign: int) -> np.ndarray:
    """Direct O(n²) summation with the unitary factor."""
    n = len(x)
    k = np.arange(n)
    out = np.empty(n, dtype=complex)
    for start in range(0, n, DFT_BLOCK_ROWS):
        rows = np.arange(start, min(start + DFT_BLOCK_ROWS, n))
        # reduce nk modulo n so the twiddle phases stay exact for long signals
        phase = (np.outer(rows, k) % n) * (sign * 2 * np.pi / n)
        out[rows] = np.exp(1j * phase) @ x
    return out / np.sqrt(n)


def _bit_reverse_indices(n: int) -> np.ndarray:
    """Bit-reversal permutation of a power-of-two length."""
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _radix2(x: np.ndarray) -> np.ndarray:
    """Iterative decimation-in-time radix-2 transform with the unitary factor."""
    n = len(x)
    x = np.asarray(x, dtype=complex)[_bit_reverse_indices(n)]
    m = 2
    while m <= n:
        half = m // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / m)
        blocks = x.reshape(-1, m)
        top = blocks[:, :half].copy()
        bottom = blocks[:, half:] * twiddle
        blocks[:, :half] = top + bottom
        blocks[:, half:] = top - bottom
        x = blocks.reshape(n)
        m <<= 1
    return x / np.sqrt(n)


def _check_pow2(n: int):
    if not NumUtil.is_power_of_two(n):
        raise ArgumentError(f"Length {n} is not a power of two; zero-pad to {next_power_of_two(n)} first")


def _real_part(values: np.ndarray) -> np.ndarray:
    """Real part of an inverse transform, rejecting spectra that are not Hermitian."""
    scale = max(1.0, float(np.max(np.abs(values)))) if len(values) else 1.0
    residual = float(np.max(np.abs(values.imag))) if len(values) else 0.0
    if residual > 1e-8 * scale:
        raise DataError(f"Inverse transform is not real (imaginary residual {residual:.3g})")
    return values.real


def dft(u: DiscreteSignal) -> SpectrumFrame:
    """
    Unitary discrete Fourier transform by direct summation.

    Args:
        u (DiscreteSignal): Non-empty signal.

    Returns:
        SpectrumFrame: n bins; the grid is in Hz if `u` has a sample rate, in rad/sample otherwise.
    """
    if len(u) == 0:
        raise ArgumentError("Cannot transform an empty signal")
    return _frame(_naive_dft(u.samples.astype(complex), -1), u.sample_rate)


def idft(spectrum: SpectrumFrame) -> DiscreteSignal:
    """Inverse of `dft` with the same unitary factor."""
    if len(spectrum) == 0:
        raise ArgumentError("Cannot transform an empty spectrum")
    return DiscreteSignal(_real_part(_naive_dft(np.array(spectrum.bins), 1)), spectrum.sample_rate)


def fft_pow2(u: DiscreteSignal) -> SpectrumFrame:
    """Radix-2 FFT, identical to `dft` up to rounding. The length must be a power of two."""
    _check_pow2(len(u))
    return _frame(_radix2(u.samples), u.sample_rate)


def ifft_pow2(spectrum: SpectrumFrame) -> DiscreteSignal:
    """Inverse radix-2 FFT with the unitary factor."""
    _check_pow2(len(spectrum))
    values = np.conj(_radix2(np.conj(spectrum.bins)))
    return DiscreteSignal(_real_part(values), spectrum.sample_rate)


def dtft(u: DiscreteSignal, thetas) -> SpectrumFrame:
    """
    Evaluate U(θ) = Σ u[k]·exp(-jθk) at the given digital frequencies.

    The index k is absolute, so a signal starting at `start_index` picks up the corresponding linear phase.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    k = u.indices
    bins = np.exp(-1j * np.outer(thetas, k)) @ u.samples if len(u) else np.zeros(len(thetas), dtype=complex)
    return SpectrumFrame(bins, thetas, "rad/sample", "none", u.sample_rate)


def fft_convolve(a: DiscreteSignal, b: DiscreteSignal) -> DiscreteSignal:
    """Linear convolution through zero padding to a power of two and the radix-2 FFT."""
    if len(a) == 0 or len(b) == 0:
        raise ArgumentError("Cannot convolve an empty signal")
    length = len(a) + len(b) - 1
    n = next_power_of_two(length)
    fa = _radix2(np.pad(a.samples, (0, n - len(a))))
    fb = _radix2(np.pad(b.samples, (0, n - len(b))))
    y = np.conj(_radix2(np.conj(fa * fb))) * np.sqrt(n)
    return DiscreteSignal(y.real[:length], a.sample_rate or b.sample_rate, a.start_index + b.start_index)


def compare_runtime(u: DiscreteSignal) -> tuple[float, float]:
    """
    Time the radix-2 FFT against the direct DFT on the same signal.

    Returns:
        tuple[float, float]: FFT and DFT durations in seconds.
    """
    with Stopwatch(f"fft_pow2(n={len(u)})") as fast:
        fft_pow2(u)
    with Stopwatch(f"dft(n={len(u)})") as slow:
        dft(u)
    ratio = fast.duration / slow.duration if slow.duration > 0 else 0.0
    PrintUtil.log(f"FFT/DFT runtime ratio for n={len(u)}: {ratio:.4f}")
    return fast.duration, slow.duration
