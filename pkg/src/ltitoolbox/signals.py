"""
Discrete signal construction, inner-product algebra, and convolution/correlation.

Signals are real-valued and finite. Everything outside a signal's support counts as zero.
"""

from enum import Enum
from typing import Callable

import numpy as np

from ltitoolbox.errors import ArgumentError, DataError, DomainError
from ltitoolbox.model import DiscreteSignal


class ElementaryKind(Enum):
    """Elementary sequences."""

    DELTA = "delta"
    STEP = "step"
    BOX = "box"


class ConvolutionMode(Enum):
    """Output length of `convolve`."""

    FULL = "full"
    CAUSAL_TRUNCATED = "causal_truncated"


def elementary(kind: ElementaryKind | str, length: int, k0: int = 0, k1: int = None) -> DiscreteSignal:
    """
    Generate a delta, step or box sequence.

    Args:
        kind (ElementaryKind | str): `delta`, `step` or `box`.
        length (int): Number of samples.
        k0 (int): Position of the impulse, the step edge or the first sample of the box.
        k1 (int): Exclusive end of the box.

    Returns:
        DiscreteSignal: The sequence starting at index 0.
    """
    kind = ElementaryKind(kind)
    if length < 1:
        raise ArgumentError(f"Length must be positive, got {length}")
    if not 0 <= k0 < length:
        raise ArgumentError(f"k0={k0} is outside [0, {length})")
    samples = np.zeros(length)
    if kind == ElementaryKind.DELTA:
        samples[k0] = 1.0
    elif kind == ElementaryKind.STEP:
        samples[k0:] = 1.0
    else:
        if k1 is None or not k0 < k1 <= length:
            raise ArgumentError(f"Box needs k0 < k1 <= {length}, got k0={k0}, k1={k1}")
        samples[k0:k1] = 1.0
    return DiscreteSignal(samples)


def _check_same_length(a: DiscreteSignal, b: DiscreteSignal):
    if len(a) != len(b):
        raise ArgumentError(f"Signals have different lengths: {len(a)} != {len(b)}")


def inner_product(a: DiscreteSignal, b: DiscreteSignal) -> float:
    """Sum of the elementwise products of two equally long signals."""
    _check_same_length(a, b)
    return float(np.dot(a.samples, b.samples))


def energy(a: DiscreteSignal) -> float:
    """Inner product of a signal with itself."""
    return inner_product(a, a)


def norm(a: DiscreteSignal) -> float:
    """Root of the energy."""
    return float(np.sqrt(energy(a)))


def normalized_correlation(a: DiscreteSignal, b: DiscreteSignal) -> float:
    """Inner product divided by both norms, in [-1, 1]."""
    _check_same_length(a, b)
    na, nb = norm(a), norm(b)
    if na == 0 or nb == 0:
        raise DomainError("Normalized correlation of a zero-norm signal is undefined")
    return inner_product(a, b) / (na * nb)


def convolve(
    a: DiscreteSignal, b: DiscreteSignal, mode: ConvolutionMode | str = ConvolutionMode.FULL
) -> DiscreteSignal:
    """
    Discrete convolution y[k] = Σ a[l]·b[k-l].

    Args:
        a (DiscreteSignal): First operand; `causal_truncated` keeps its support.
        b (DiscreteSignal): Second operand, typically an impulse response.
        mode (ConvolutionMode | str): `full` returns len(a)+len(b)-1 samples, `causal_truncated` the first len(a).

    Returns:
        DiscreteSignal: The convolution, starting at the sum of both start indices.
    """
    mode = ConvolutionMode(mode)
    if len(a) == 0 or len(b) == 0:
        raise ArgumentError("Cannot convolve an empty signal")
    full = np.convolve(a.samples, b.samples)
    if mode == ConvolutionMode.CAUSAL_TRUNCATED:
        full = full[: len(a)]
    return DiscreteSignal(full, a.sample_rate or b.sample_rate, a.start_index + b.start_index)


def cross_correlate(a: DiscreteSignal, b: DiscreteSignal, max_lag: int) -> DiscreteSignal:
    """
    Biased cross-correlation r[m] = (1/n)·Σ a[k]·b[k+m] for m in [-max_lag, max_lag].

    The result is a lag sequence whose `start_index` is `-max_lag`.
    """
    _check_same_length(a, b)
    n = len(a)
    if n == 0:
        raise ArgumentError("Cannot correlate empty signals")
    if not 0 <= max_lag < n:
        raise ArgumentError(f"max_lag must lie in [0, {n}), got {max_lag}")
    # np.correlate(b, a)[n-1+m] = Σ b[k+m]·a[k]
    full = np.correlate(b.samples, a.samples, mode="full") / n
    lags = full[n - 1 - max_lag : n + max_lag]
    return DiscreteSignal(lags, a.sample_rate, -max_lag)


def autocorrelate(v: DiscreteSignal, max_lag: int) -> DiscreteSignal:
    """Biased autocorrelation; symmetric in the lag."""
    r = cross_correlate(v, v, max_lag)
    samples = 0.5 * (r.samples + r.samples[::-1])
    return r.with_samples(samples)


def sample_continuous(evaluator: Callable[[float], float], fs: float, n_t: int, t0: float = 0.0) -> DiscreteSignal:
    """
    Sample a continuous-time function at t0 + k/fs.

    Args:
        evaluator (Callable): Maps time in seconds to a real value.
        fs (float): Sample rate in Hz.
        n_t (int): Number of samples.
        t0 (float): Time of the first sample.

    Returns:
        DiscreteSignal: The samples with `sample_rate` set to `fs`.
    """
    if not fs > 0:
        raise ArgumentError(f"Sample rate must be positive, got {fs}")
    if n_t < 1:
        raise ArgumentError(f"Need at least one sample, got {n_t}")
    t = t0 + np.arange(n_t) / fs
    samples = np.array([evaluator(tk) for tk in t], dtype=float)
    if not np.all(np.isfinite(samples)):
        raise DataError("Evaluator returned non-finite values")
    return DiscreteSignal(samples, fs)


def time_reverse(u: DiscreteSignal) -> DiscreteSignal:
    """Mirror the samples; the reversed signal occupies the mirrored index range."""
    return DiscreteSignal(u.samples[::-1], u.sample_rate, -(u.start_index + len(u) - 1))
