"""
FIR window-method design, Butterworth IIR design, complementary filters and zero-phase application.
"""

from enum import Enum

import numpy as np

from ltitoolbox.errors import ArgumentError, NumericalError
from ltitoolbox.lti import bilinear_zpk, is_stable, prewarp, simulate, tf_from_zpk
from ltitoolbox.model import (
    DiscreteSignal,
    Domain,
    FirDesign,
    RationalTransferFunction,
    StabilityClass,
    WindowKind,
    ZeroPoleGain,
)
from ltitoolbox.signals import ConvolutionMode, convolve

# Coefficient expansion of higher orders loses the half-power accuracy.
MAX_BUTTERWORTH_ORDER = 20


class FilterKind(Enum):
    """Implementation family of a filter."""

    FIR = "fir"
    IIR = "iir"


def filter_kind(filt: FirDesign | RationalTransferFunction | np.ndarray) -> FilterKind:
    """FIR for tap vectors and FIR designs, IIR for transfer functions."""
    if isinstance(filt, RationalTransferFunction):
        if filt.domain != Domain.Z:
            raise ArgumentError("Only z-domain transfer functions can filter sampled signals")
        return FilterKind.IIR
    return FilterKind.FIR


def _taps(filt: FirDesign | np.ndarray) -> np.ndarray:
    return filt.taps if isinstance(filt, FirDesign) else np.asarray(filt, dtype=float)


def _check_odd(n: int):
    if n < 3 or n % 2 == 0:
        raise ArgumentError(f"Filter order must be odd and at least 3, got {n}")


def ideal_lowpass_ir(theta_c: float, n: int) -> np.ndarray:
    """
    Ideal low-pass impulse response delayed to the center of `n` taps.

    h[k] = sin((k-α)θc)/(π(k-α)) with α = (n-1)/2; the center tap is θc/π.
    """
    if not 0 < theta_c <= np.pi:
        raise ArgumentError(f"Cut-off {theta_c} rad/sample is outside (0, π]")
    if n < 1 or n % 2 == 0:
        raise ArgumentError(f"Number of taps must be odd, got {n}")
    alpha = (n - 1) // 2
    k = np.arange(n) - alpha
    return theta_c / np.pi * np.sinc(theta_c * k / np.pi)


def window(kind: WindowKind | str, n: int) -> np.ndarray:
    """Symmetric window of length `n`."""
    try:
        kind = WindowKind(kind)
    except ValueError as e:
        raise ArgumentError(f"Unknown window: {kind}") from e
    if n < 2:
        raise ArgumentError(f"Window length must be at least 2, got {n}")
    phase = 2 * np.pi * np.arange(n) / (n - 1)
    match kind:
        case WindowKind.RECTANGULAR:
            w = np.ones(n)
        case WindowKind.HANNING:
            w = 0.5 - 0.5 * np.cos(phase)
        case WindowKind.HAMMING:
            w = 0.54 - 0.46 * np.cos(phase)
        case WindowKind.BLACKMAN:
            w = 0.42 - 0.5 * np.cos(phase) + 0.08 * np.cos(2 * phase)
    return 0.5 * (w + w[::-1])


def firwin(n: int, fc: float, fs: float, kind: WindowKind | str = WindowKind.HAMMING) -> FirDesign:
    """
    Low-pass FIR filter by the window method, normalized to unit DC gain.

    Args:
        n (int): Odd number of taps.
        fc (float): Cut-off frequency in Hz.
        fs (float): Sample rate in Hz.
        kind (WindowKind | str): Window applied to the ideal impulse response.

    Returns:
        FirDesign: Symmetric taps with group delay (n-1)/2.
    """
    _check_odd(n)
    if not 0 < fc < fs / 2:
        raise ArgumentError(f"Cut-off {fc} Hz must lie in (0, {fs / 2}) Hz")
    taps = ideal_lowpass_ir(2 * np.pi * fc / fs, n) * window(kind, n)
    taps = taps / np.sum(taps)
    return FirDesign(0.5 * (taps + taps[::-1]), fc, fs, WindowKind(kind))


def highpass_complement(fir: FirDesign | np.ndarray) -> np.ndarray:
    """Complementary high-pass δ_α − h, with the impulse at the group delay."""
    taps = _taps(fir)
    _check_odd(len(taps))
    out = -taps
    out[(len(taps) - 1) // 2] += 1.0
    return out


def spectral_reverse(fir: FirDesign | np.ndarray) -> np.ndarray:
    """High-pass by modulation with (-1)ⁿ, mirroring the response about fs/4."""
    taps = _taps(fir)
    return taps * (-1.0) ** np.arange(len(taps))


def butterworth(n: int, fc: float, fs: float) -> RationalTransferFunction:
    """
    Digital Butterworth low-pass filter of order `n`.

    The analog prototype has no finite zeros and `n` poles on a circle of radius 2π·f' in the left half-plane,
    f' being the pre-warped cut-off. The bilinear transform then puts the half-power point exactly at `fc`.
    """
    if n < 1:
        raise ArgumentError(f"Butterworth order must be at least 1, got {n}")
    if n > MAX_BUTTERWORTH_ORDER:
        raise NumericalError(f"Butterworth order {n} exceeds {MAX_BUTTERWORTH_ORDER}; coefficients are not reliable")
    omega = 2 * np.pi * prewarp(fc, fs)
    k = np.arange(n)
    analog_poles = omega * np.exp(1j * np.pi * (2 * k + n + 1) / (2 * n))
    analog_poles[np.abs(analog_poles.imag) < 1e-12 * omega] = -omega
    gain = float(np.real(np.prod(-analog_poles)))
    analog = ZeroPoleGain([], analog_poles, gain, Domain.S)
    return tf_from_zpk(bilinear_zpk(analog, 1.0 / fs))


def apply(filt: FirDesign | RationalTransferFunction | np.ndarray, u: DiscreteSignal) -> DiscreteSignal:
    """Causal filtering: convolution for FIR, the difference equation for IIR."""
    if filter_kind(filt) == FilterKind.IIR:
        return simulate(filt, u)
    h = DiscreteSignal(_taps(filt))
    return convolve(u, h, ConvolutionMode.CAUSAL_TRUNCATED)


def edge_samples(filt: FirDesign | RationalTransferFunction | np.ndarray) -> int:
    """Samples at each end of a zero-phase output affected by the signal boundary."""
    if filter_kind(filt) == FilterKind.IIR:
        return 3 * max(len(filt.a), len(filt.b))
    return (len(_taps(filt)) - 1) // 2


def zero_phase(filt: FirDesign | RationalTransferFunction | np.ndarray, u: DiscreteSignal) -> DiscreteSignal:
    """
    Zero-phase filtering.

    FIR: causal convolution advanced by the group delay. IIR: forward pass, reversal, second pass and
    reversal, on the signal extended by odd reflection at both ends.

    Raises:
        ArgumentError: If the IIR filter is not stable or the signal is too short for the padding.
    """
    if filter_kind(filt) == FilterKind.FIR:
        taps = _taps(filt)
        _check_odd(len(taps))
        alpha = (len(taps) - 1) // 2
        full = np.convolve(u.samples, taps)
        return u.with_samples(full[alpha : alpha + len(u)])

    if is_stable(filt) != StabilityClass.STABLE:
        raise ArgumentError("Zero-phase filtering needs a stable filter")
    pad = edge_samples(filt)
    if len(u) <= pad:
        raise ArgumentError(f"Signal of {len(u)} samples is too short for padding of {pad}")
    x = u.samples
    head = 2 * x[0] - x[pad:0:-1]
    tail = 2 * x[-1] - x[-2 : -pad - 2 : -1]
    extended = DiscreteSignal(np.concatenate((head, x, tail)), u.sample_rate)
    forward = simulate(filt, extended).samples[::-1]
    backward = simulate(filt, extended.with_samples(forward)).samples[::-1]
    return u.with_samples(backward[pad : pad + len(u)])
