"""
Model classes representing signals, spectra, systems and regression problems.

All models are immutable value objects: array fields are read-only numpy arrays, and operations return new
instances instead of modifying existing ones.
"""

import math
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ltitoolbox.errors import ArgumentError, DataError


def frozen_array(values, dtype=float) -> np.ndarray:
    """Copy `values` into a read-only one-dimensional numpy array."""
    arr = np.array(values, dtype=dtype)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    arr.setflags(write=False)
    return arr


class Domain(Enum):
    """Transform domain of a transfer function."""

    S = "s"
    Z = "z"


class StabilityClass(Enum):
    """BIBO stability classification."""

    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


class WindowKind(Enum):
    """Symmetric windows of the FIR window method."""

    RECTANGULAR = "rectangular"
    HANNING = "hanning"
    HAMMING = "hamming"
    BLACKMAN = "blackman"


class Distribution(Enum):
    """Distributions of the white noise generator."""

    UNIFORM01 = "uniform01"
    GAUSSIAN = "gaussian"


class DiscreteSignal:
    """
    Real-valued sample sequence, the carrier for inputs, outputs, impulse responses and lag sequences.

    Attributes:
        samples (np.ndarray): The read-only samples.
        sample_rate (float): Optional sample rate in Hz.
        start_index (int): Index of the first sample. Lag sequences use the most negative lag here.
    """

    samples: np.ndarray
    sample_rate: Optional[float]
    start_index: int

    def __init__(self, samples: Sequence[float], sample_rate: float = None, start_index: int = 0):
        """Init instance."""
        arr = np.array(samples, dtype=float)
        if arr.ndim != 1:
            raise DataError(f"Signal samples must be one-dimensional, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DataError("Signal contains non-finite samples")
        if sample_rate is not None:
            sample_rate = float(sample_rate)
            if not math.isfinite(sample_rate) or sample_rate <= 0:
                raise ArgumentError(f"Sample rate must be strictly positive, got {sample_rate}")
        arr.setflags(write=False)
        self.samples = arr
        self.sample_rate = sample_rate
        self.start_index = int(start_index)

    def __len__(self) -> int:
        """Number of samples."""
        return len(self.samples)

    @property
    def dt(self) -> Optional[float]:
        """Sample period in seconds, if a sample rate is attached."""
        return 1.0 / self.sample_rate if self.sample_rate else None

    @property
    def indices(self) -> np.ndarray:
        """Absolute sample indices."""
        return self.start_index + np.arange(len(self.samples))

    def time_axis(self) -> np.ndarray:
        """Sample instants in seconds, or plain indices when no sample rate is attached."""
        if self.sample_rate is None:
            return self.indices.astype(float)
        return self.indices / self.sample_rate

    def with_samples(self, samples: Sequence[float]) -> "DiscreteSignal":
        """New signal with the same sample rate and start index."""
        return DiscreteSignal(samples, self.sample_rate, self.start_index)

    def shifted(self, n: int) -> "DiscreteSignal":
        """The same samples, delayed by `n` indices."""
        return DiscreteSignal(self.samples, self.sample_rate, self.start_index + n)

    def at(self, k: int) -> float:
        """Sample at absolute index `k`; zero outside the support."""
        i = k - self.start_index
        if 0 <= i < len(self.samples):
            return float(self.samples[i])
        return 0.0

    def __add__(self, other: "DiscreteSignal") -> "DiscreteSignal":
        """Sum of two signals on the union of their supports."""
        start = min(self.start_index, other.start_index)
        stop = max(self.start_index + len(self), other.start_index + len(other))
        out = np.zeros(stop - start)
        out[self.start_index - start : self.start_index - start + len(self)] += self.samples
        out[other.start_index - start : other.start_index - start + len(other)] += other.samples
        return DiscreteSignal(out, self.sample_rate or other.sample_rate, start)

    def __sub__(self, other: "DiscreteSignal") -> "DiscreteSignal":
        """Difference of two signals on the union of their supports."""
        return self + (-1.0) * other

    def __mul__(self, factor: float) -> "DiscreteSignal":
        """Scale by a real factor."""
        return self.with_samples(self.samples * float(factor))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        """Instance representation."""
        return f"DiscreteSignal(n={len(self)}, sample_rate={self.sample_rate}, start_index={self.start_index})"


class SpectrumFrame:
    """
    Complex bin values together with the frequency grid they live on.

    Attributes:
        bins (np.ndarray): Complex bin values.
        grid (np.ndarray): Frequencies of the bins, in `unit`.
        unit (str): `rad/sample` (digital θ), `rad/s` (analog ω) or `Hz`.
        normalization (str): `unitary` for the 1/√n transforms, `none` for plain sums.
        sample_rate (float): Sample rate of the transformed signal, if known.
    """

    bins: np.ndarray
    grid: np.ndarray
    unit: str
    normalization: str
    sample_rate: Optional[float]

    def __init__(self, bins, grid, unit: str = "rad/sample", normalization: str = "unitary", sample_rate: float = None):
        """Init instance."""
        bins = frozen_array(bins, complex)
        grid = frozen_array(grid, float)
        if len(bins) != len(grid):
            raise ArgumentError(f"Spectrum has {len(bins)} bins but {len(grid)} grid points")
        self.bins = bins
        self.grid = grid
        self.unit = unit
        self.normalization = normalization
        self.sample_rate = sample_rate

    def __len__(self) -> int:
        """Number of bins."""
        return len(self.bins)

    def magnitude(self) -> np.ndarray:
        """Absolute value of the bins."""
        return np.abs(self.bins)

    def phase(self) -> np.ndarray:
        """Argument of the bins in radians."""
        return np.angle(self.bins)

    def frequencies_hz(self) -> np.ndarray:
        """Grid in Hz; cycles per sample for digital grids without a sample rate."""
        if self.unit == "Hz":
            return np.array(self.grid)
        if self.unit == "rad/s":
            return self.grid / (2 * np.pi)
        return self.grid / (2 * np.pi) * (self.sample_rate or 1.0)

    def __repr__(self) -> str:
        """Instance representation."""
        return f"SpectrumFrame(n={len(self)}, unit={self.unit}, normalization={self.normalization})"


class RationalTransferFunction:
    """
    Ratio of two real polynomials, H(s) or H(z).

    Coefficients are stored leading coefficient first in both domains: descending powers of s for the s-domain,
    ascending powers of z⁻¹ for the z-domain. Thus `a[0]` is always the leading denominator coefficient.

    Attributes:
        b (np.ndarray): Feedforward (numerator) coefficients.
        a (np.ndarray): Feedback (denominator) coefficients.
        domain (Domain): `s` or `z`.
        dt (float): Sample period in seconds; set iff the domain is `z`.
    """

    b: np.ndarray
    a: np.ndarray
    domain: Domain
    dt: Optional[float]

    def __init__(self, b: Sequence[float], a: Sequence[float], domain: Domain, dt: float = None):
        """Init instance."""
        domain = Domain(domain)
        b = frozen_array(b, float)
        a = frozen_array(a, float)
        if len(a) == 0 or len(b) == 0:
            raise ArgumentError("Numerator and denominator need at least one coefficient")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ArgumentError("Transfer function coefficients must be finite")
        if a[0] == 0:
            raise ArgumentError(f"Leading denominator coefficient must be nonzero, got a={list(a)}")
        if domain == Domain.S:
            if dt is not None:
                raise ArgumentError("A continuous transfer function has no sample period")
            if _degree(b) > len(a) - 1:
                raise ArgumentError(f"Improper transfer function: deg(b)={_degree(b)} > deg(a)={len(a) - 1}")
        else:
            if dt is None or not math.isfinite(dt) or dt <= 0:
                raise ArgumentError(f"A discrete transfer function needs a positive sample period, got {dt}")
            dt = float(dt)
        self.b = b
        self.a = a
        self.domain = domain
        self.dt = dt

    @property
    def is_fir(self) -> bool:
        """Check if the denominator is a constant."""
        return bool(np.all(self.a[1:] == 0))

    def __repr__(self) -> str:
        """Instance representation."""
        return f"RationalTransferFunction(b={list(self.b)}, a={list(self.a)}, domain={self.domain.value}, dt={self.dt})"


def _degree(coefficients: np.ndarray) -> int:
    """Degree of a polynomial stored highest power first; -1 for the zero polynomial."""
    nonzero = np.flatnonzero(coefficients)
    if len(nonzero) == 0:
        return -1
    return len(coefficients) - 1 - int(nonzero[0])


class ZeroPoleGain:
    """
    Factored transfer function H(x) = gain · Π(x − zeros) / Π(x − poles), with x = s or z.

    Attributes:
        zeros (np.ndarray): Complex zeros.
        poles (np.ndarray): Complex poles.
        gain (float): Real gain.
        domain (Domain): `s` or `z`.
        dt (float): Sample period for the z-domain.
    """

    zeros: np.ndarray
    poles: np.ndarray
    gain: float
    domain: Domain
    dt: Optional[float]

    def __init__(self, zeros, poles, gain: float, domain: Domain, dt: float = None, tol: float = 1e-9):
        """Init instance."""
        self.zeros = frozen_array(zeros, complex)
        self.poles = frozen_array(poles, complex)
        self.gain = float(np.real(gain))
        self.domain = Domain(domain)
        self.dt = dt
        for name, roots in (("zeros", self.zeros), ("poles", self.poles)):
            if not _has_conjugate_pairs(roots, tol):
                raise ArgumentError(f"Complex {name} of a real system must come in conjugate pairs: {roots}")

    def __repr__(self) -> str:
        """Instance representation."""
        return (
            f"ZeroPoleGain(zeros={list(self.zeros)}, poles={list(self.poles)}, gain={self.gain}, "
            f"domain={self.domain.value})"
        )


def _has_conjugate_pairs(roots: np.ndarray, tol: float) -> bool:
    """Check that the conjugate of every root is also a root."""
    for r in roots:
        if abs(r.imag) <= tol * max(1.0, abs(r)):
            continue
        if np.min(np.abs(roots - np.conj(r))) > tol * max(1.0, abs(r)):
            return False
    return True


class FirDesign:
    """
    Linear-phase low-pass FIR filter designed with the window method.

    Attributes:
        taps (np.ndarray): Symmetric impulse response of odd length N, normalized to unit DC gain.
        cutoff (float): Cut-off frequency in Hz.
        sample_rate (float): Sample rate in Hz.
        window_kind (WindowKind): Window used for the design.
    """

    taps: np.ndarray
    cutoff: float
    sample_rate: float
    window_kind: WindowKind

    def __init__(self, taps: Sequence[float], cutoff: float, sample_rate: float, window_kind: WindowKind):
        """Init instance."""
        taps = frozen_array(taps, float)
        n = len(taps)
        if n < 3 or n % 2 == 0:
            raise ArgumentError(f"FIR order must be odd and at least 3, got {n}")
        if np.max(np.abs(taps - taps[::-1])) > 1e-12:
            raise ArgumentError("FIR taps are not symmetric")
        if abs(np.sum(taps) - 1.0) > 1e-12:
            raise ArgumentError(f"FIR taps must sum to one, got {np.sum(taps)}")
        self.taps = taps
        self.cutoff = float(cutoff)
        self.sample_rate = float(sample_rate)
        self.window_kind = WindowKind(window_kind)

    @property
    def order(self) -> int:
        """Number of taps N."""
        return len(self.taps)

    @property
    def group_delay(self) -> int:
        """Constant delay (N-1)/2 in samples."""
        return (len(self.taps) - 1) // 2

    def __repr__(self) -> str:
        """Instance representation."""
        return (
            f"FirDesign(order={self.order}, cutoff={self.cutoff}, sample_rate={self.sample_rate}, "
            f"window={self.window_kind.value})"
        )


class FrequencySplitting:
    """
    Frequency splitting vector of a multi-resolution decomposition.

    Attributes:
        cutoffs (np.ndarray): Strictly increasing band edges f₁ … f_{M-1} in Hz.
        sample_rate (float): Sample rate in Hz.
        filter_order (int): Odd number of taps shared by all band filters.
        window_kind (WindowKind): Window of all band filters.
    """

    cutoffs: np.ndarray
    sample_rate: float
    filter_order: int
    window_kind: WindowKind

    def __init__(self, cutoffs: Sequence[float], sample_rate: float, filter_order: int, window_kind: WindowKind):
        """Init instance."""
        cutoffs = frozen_array(cutoffs, float)
        if len(cutoffs) == 0:
            raise ArgumentError("At least one cut-off frequency is needed for two scales")
        if np.any(np.diff(cutoffs) <= 0):
            raise ArgumentError(f"Cut-off frequencies must be strictly increasing: {list(cutoffs)}")
        if cutoffs[0] <= 0 or cutoffs[-1] >= sample_rate / 2:
            raise ArgumentError(f"Cut-off frequencies must lie in (0, {sample_rate / 2}) Hz: {list(cutoffs)}")
        if filter_order < 3 or filter_order % 2 == 0:
            raise ArgumentError(f"Filter order must be odd and at least 3, got {filter_order}")
        self.cutoffs = cutoffs
        self.sample_rate = float(sample_rate)
        self.filter_order = int(filter_order)
        self.window_kind = WindowKind(window_kind)

    @property
    def scale_count(self) -> int:
        """Number of scales M."""
        return len(self.cutoffs) + 1

    def __repr__(self) -> str:
        """Instance representation."""
        return (
            f"FrequencySplitting(cutoffs={list(self.cutoffs)}, sample_rate={self.sample_rate}, "
            f"order={self.filter_order})"
        )


class NoiseSpec:
    """
    Seed and distribution of a white noise stream.

    Attributes:
        seed (int): 64-bit unsigned seed.
        distribution (Distribution): `uniform01` or `gaussian`.
        mu (float): Mean of the Gaussian.
        sigma (float): Standard deviation of the Gaussian.
    """

    seed: int
    distribution: Distribution
    mu: float
    sigma: float

    def __init__(
        self, seed: int = 0, distribution: Distribution = Distribution.UNIFORM01, mu: float = 0.0, sigma: float = 1.0
    ):
        """Init instance."""
        if not 0 <= int(seed) < 2**64:
            raise ArgumentError(f"Seed must be a 64-bit unsigned integer, got {seed}")
        distribution = Distribution(distribution)
        if distribution == Distribution.GAUSSIAN and not sigma > 0:
            raise ArgumentError(f"Gaussian noise needs sigma > 0, got {sigma}")
        self.seed = int(seed)
        self.distribution = distribution
        self.mu = float(mu)
        self.sigma = float(sigma)

    @staticmethod
    def gaussian(seed: int, mu: float, sigma: float) -> "NoiseSpec":
        """Gaussian noise spec."""
        return NoiseSpec(seed, Distribution.GAUSSIAN, mu, sigma)

    def __repr__(self) -> str:
        """Instance representation."""
        if self.distribution == Distribution.GAUSSIAN:
            return f"NoiseSpec(seed={self.seed}, gaussian(mu={self.mu}, sigma={self.sigma}))"
        return f"NoiseSpec(seed={self.seed}, uniform01)"


class SignalComponent:
    """
    Gaussian-modulated tone a·sin(2πft)·exp(-(t-τ)²/b); an infinite width is a pure tone.

    Attributes:
        amplitude (float): Peak amplitude a.
        frequency (float): Tone frequency f in Hz.
        center (float): Envelope center τ in seconds.
        width (float): Envelope width b in s².
    """

    amplitude: float
    frequency: float
    center: float
    width: float

    def __init__(self, amplitude: float, frequency: float, center: float = 0.0, width: float = math.inf):
        """Init instance."""
        if not width > 0:
            raise ArgumentError(f"Envelope width must be positive, got {width}")
        self.amplitude = float(amplitude)
        self.frequency = float(frequency)
        self.center = float(center)
        self.width = float(width)

    def __repr__(self) -> str:
        """Instance representation."""
        return f"SignalComponent(a={self.amplitude}, f={self.frequency}, tau={self.center}, b={self.width})"


class HankelRegression:
    """
    Lag-shifted data matrix of a SISO system and the output it should reproduce.

    Columns are u⁽⁰⁾ … u⁽⁻ⁿᵇ⁾ followed by y⁽⁻¹⁾ … y⁽⁻ⁿᵃ⁾.

    Attributes:
        data_matrix (np.ndarray): Matrix of shape (rows, n_b + 1 + n_a).
        target (np.ndarray): The output y⁽⁰⁾ of each row.
        n_b (int): Feedforward lag count.
        n_a (int): Feedback lag count.
        first_row (int): Sample index of the first row; nonzero when rows affected by the pre-history were dropped.
    """

    data_matrix: np.ndarray
    target: np.ndarray
    n_b: int
    n_a: int
    first_row: int

    def __init__(self, data_matrix: np.ndarray, target: np.ndarray, n_b: int, n_a: int, first_row: int = 0):
        """Init instance."""
        data_matrix = np.array(data_matrix, dtype=float)
        if data_matrix.ndim != 2 or data_matrix.shape[1] != n_b + 1 + n_a:
            raise ArgumentError(f"Data matrix of shape {data_matrix.shape} does not have n_b + 1 + n_a columns")
        target = frozen_array(target, float)
        if len(target) != data_matrix.shape[0]:
            raise ArgumentError("Data matrix and target have different row counts")
        data_matrix.setflags(write=False)
        self.data_matrix = data_matrix
        self.target = target
        self.n_b = int(n_b)
        self.n_a = int(n_a)
        self.first_row = int(first_row)

    def __repr__(self) -> str:
        """Instance representation."""
        return f"HankelRegression(rows={self.data_matrix.shape[0]}, n_b={self.n_b}, n_a={self.n_a})"


class IdentifiedModel:
    """
    Result of a ridge identification.

    Attributes:
        w (np.ndarray): Raw regression vector [b₀ … b_{n_b}, −a₁ … −a_{n_a}] as it multiplies the Hankel columns.
        n_b (int): Feedforward lag count.
        n_a (int): Feedback lag count.
        alpha (float): Ridge parameter.
        residual_norm (float): ‖y⁽⁰⁾ − Hw‖.
        condition (float): Condition number of HᵀH + αI.
        solver (str): `qr` or `cholesky`.
    """

    w: np.ndarray
    n_b: int
    n_a: int
    alpha: float
    residual_norm: float
    condition: float
    solver: str

    def __init__(self, w, n_b: int, n_a: int, alpha: float, residual_norm: float, condition: float, solver: str):
        """Init instance."""
        w = frozen_array(w, float)
        if len(w) != n_b + 1 + n_a:
            raise ArgumentError(f"Coefficient vector of length {len(w)} does not match n_b + 1 + n_a")
        self.w = w
        self.n_b = int(n_b)
        self.n_a = int(n_a)
        self.alpha = float(alpha)
        self.residual_norm = float(residual_norm)
        self.condition = float(condition)
        self.solver = solver

    @property
    def b(self) -> np.ndarray:
        """Feedforward coefficients of the normalized LCCDE."""
        return np.array(self.w[: self.n_b + 1])

    @property
    def a(self) -> np.ndarray:
        """Feedback coefficients of the normalized LCCDE, a₀ = 1."""
        return np.concatenate(([1.0], -self.w[self.n_b + 1 :]))

    def __repr__(self) -> str:
        """Instance representation."""
        return f"IdentifiedModel(b={list(self.b)}, a={list(self.a)}, alpha={self.alpha}, solver={self.solver})"
