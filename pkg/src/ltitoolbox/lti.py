"""
Rational transfer functions in the s- and z-domain.

Evaluation, pole/zero analysis, stability, simulation by the difference equation, continuous time responses by
residue expansion, and s→z discretization (matched-Z and bilinear).

Coefficient order: s-domain polynomials are stored highest power of s first; z-domain polynomials in ascending
powers of z⁻¹. In both domains `a[0]` is the leading denominator coefficient.
"""

import math

import numpy as np

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError, DomainError, NumericalError, UnsupportedStructureError
from ltitoolbox.model import (
    DiscreteSignal,
    Domain,
    RationalTransferFunction,
    SpectrumFrame,
    StabilityClass,
    ZeroPoleGain,
)
from ltitoolbox.utils import PrintUtil

# exp() overflows above this argument
MAX_EXP_ARG = 700.0


def tf_from_lccde(a, b, domain: Domain | str, dt: float = None) -> RationalTransferFunction:
    """
    Transfer function of a linear constant-coefficient differential/difference equation.

    Args:
        a (Sequence[float]): Feedback coefficients, leading coefficient first.
        b (Sequence[float]): Feedforward coefficients, same order.
        domain (Domain | str): `s` or `z`.
        dt (float): Sample period, required for the z-domain.

    Returns:
        RationalTransferFunction: The coefficients stored verbatim.
    """
    return RationalTransferFunction(b, a, Domain(domain), dt)


def lccde_from_tf(tf: RationalTransferFunction) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients `(a, b)` scaled so that the leading denominator coefficient is one."""
    a0 = tf.a[0]
    return tf.a / a0, tf.b / a0


def _z_polynomials(tf: RationalTransferFunction) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator of a z-domain function as polynomials in z, highest power first."""
    n = max(len(tf.b), len(tf.a))
    return np.pad(tf.b, (0, n - len(tf.b))), np.pad(tf.a, (0, n - len(tf.a)))


def _polynomials(tf: RationalTransferFunction) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator in the variable of the domain, highest power first."""
    if tf.domain == Domain.Z:
        return _z_polynomials(tf)
    return np.array(tf.b), np.array(tf.a)


def _trim(poly: np.ndarray) -> np.ndarray:
    """Strip leading zero coefficients."""
    nonzero = np.flatnonzero(poly)
    return poly[nonzero[0] :] if len(nonzero) else poly[:0]


def _roots(poly: np.ndarray) -> np.ndarray:
    """Roots through the companion matrix, checked against a relative residual bound."""
    poly = _trim(poly)
    if len(poly) <= 1:
        return np.array([], dtype=complex)
    try:
        roots = np.roots(poly).astype(complex)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Root finder did not converge: {e}") from e
    bound = config["root-residual"].get(float)
    powers = np.arange(len(poly) - 1, -1, -1)
    for r in roots:
        residual = abs(np.polyval(poly, r))
        scale = float(np.sum(np.abs(poly) * np.abs(r) ** powers))
        if residual > bound * scale:
            raise NumericalError(f"Root {r} has residual {residual:.3g} above {bound:g} x {scale:.3g}")
    return roots


def poles(tf: RationalTransferFunction) -> np.ndarray:
    """Poles of a transfer function."""
    return _roots(_polynomials(tf)[1])


def zpk(tf: RationalTransferFunction) -> ZeroPoleGain:
    """
    Factor a transfer function into zeros, poles and gain.

    The gain is the ratio of the leading nonzero numerator coefficient to the leading denominator coefficient
    of the polynomials in s or z.
    """
    num, den = _polynomials(tf)
    num = _trim(num)
    gain = num[0] / den[0] if len(num) else 0.0
    return ZeroPoleGain(_roots(num), _roots(den), gain, tf.domain, tf.dt)


def tf_from_zpk(factored: ZeroPoleGain) -> RationalTransferFunction:
    """Expand a factored transfer function back into polynomial coefficients."""
    nz, n_p = len(factored.zeros), len(factored.poles)
    if nz > n_p:
        raise ArgumentError(f"More zeros ({nz}) than poles ({n_p}) is not a causal system")
    num = factored.gain * np.real(np.atleast_1d(np.poly(factored.zeros)))
    den = np.real(np.atleast_1d(np.poly(factored.poles)))
    if factored.domain == Domain.Z:
        # divide both polynomials by z^n_p to get powers of z⁻¹
        num = np.concatenate((np.zeros(n_p - nz), num))
    return RationalTransferFunction(num, den, factored.domain, factored.dt)


def _evaluate_many(tf: RationalTransferFunction, xs: np.ndarray) -> np.ndarray:
    """Evaluate at many points, computing the poles once."""
    num, den = _polynomials(tf)
    tol = config["pole-tolerance"].get(float)
    tf_poles = poles(tf)
    xs = np.asarray(xs, dtype=complex)
    if len(tf_poles):
        dist = np.abs(xs[:, None] - tf_poles[None, :])
        hit = dist <= tol * np.maximum(1.0, np.abs(tf_poles))[None, :]
        if np.any(hit):
            i, j = np.argwhere(hit)[0]
            raise DomainError(f"Transfer function evaluated at pole {tf_poles[j]} (x={xs[i]})", pole=tf_poles[j])
    den_values = np.polyval(den, xs)
    if np.any(den_values == 0):
        x = xs[np.flatnonzero(den_values == 0)[0]]
        raise DomainError(f"Transfer function evaluated at pole {x}", pole=x)
    return np.polyval(num, xs) / den_values


def evaluate(tf: RationalTransferFunction, x: complex) -> complex:
    """
    Evaluate H(s) or H(z) at a complex point.

    Raises:
        DomainError: If `x` lies within the pole tolerance of a pole; the error carries the pole.
    """
    return complex(_evaluate_many(tf, np.array([x]))[0])


def freq_response(tf: RationalTransferFunction, grid) -> SpectrumFrame:
    """
    Frequency response on a grid of angular frequencies.

    The s-domain substitutes s = jω (grid in rad/s), the z-domain z = exp(jθ) (grid in rad/sample).
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if tf.domain == Domain.S:
        return SpectrumFrame(_evaluate_many(tf, 1j * grid), grid, "rad/s", "none")
    return SpectrumFrame(_evaluate_many(tf, np.exp(1j * grid)), grid, "rad/sample", "none", 1.0 / tf.dt)


def freq_response_hz(tf: RationalTransferFunction, freqs) -> SpectrumFrame:
    """Frequency response on a grid of physical frequencies in Hz."""
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    if tf.domain == Domain.S:
        values = _evaluate_many(tf, 2j * np.pi * freqs)
        return SpectrumFrame(values, freqs, "Hz", "none")
    values = _evaluate_many(tf, np.exp(2j * np.pi * freqs * tf.dt))
    return SpectrumFrame(values, freqs, "Hz", "none", 1.0 / tf.dt)


def static_gain(tf: RationalTransferFunction) -> float:
    """H(s=0) or H(z=1)."""
    return float(evaluate(tf, 0.0 if tf.domain == Domain.S else 1.0).real)


def is_stable(tf: RationalTransferFunction) -> StabilityClass:
    """
    BIBO stability from the pole locations.

    s-domain: stable iff every pole has Re(p) < -tol. z-domain: stable iff every pole has |p| < 1 - tol. Poles
    within ±tol of the boundary make the system marginal.
    """
    tol = config["stability-tolerance"].get(float)
    tf_poles = poles(tf)
    if len(tf_poles) == 0:
        return StabilityClass.STABLE
    if tf.domain == Domain.S:
        margin = float(np.max(tf_poles.real))
    else:
        margin = float(np.max(np.abs(tf_poles))) - 1.0
    if margin < -tol:
        return StabilityClass.STABLE
    if margin > tol:
        return StabilityClass.UNSTABLE
    return StabilityClass.MARGINAL


def _check_domain(tf: RationalTransferFunction, domain: Domain):
    if tf.domain != domain:
        raise ArgumentError(f"Expected a {domain.value}-domain transfer function, got {tf.domain.value}")


def simulate(tf: RationalTransferFunction, u: DiscreteSignal) -> DiscreteSignal:
    """
    Run the difference equation from rest.

    y[k] = Σ (bₙ/a₀)·u[k-n] − Σ_{n≥1} (aₙ/a₀)·y[k-n], with zero pre-history.

    Returns:
        DiscreteSignal: Output of the same length and start index as `u`.

    Raises:
        NumericalError: If the output overflows.
    """
    _check_domain(tf, Domain.Z)
    a, b = lccde_from_tf(tf)
    fb = a[1:]
    n, nb, na = len(u), len(b), len(fb)
    padded_u = np.concatenate((np.zeros(nb - 1), u.samples))
    padded_y = np.zeros(na + n)
    b_rev, a_rev = b[::-1], fb[::-1]
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n):
            acc = np.dot(b_rev, padded_u[k : k + nb])
            if na:
                acc -= np.dot(a_rev, padded_y[k : k + na])
            padded_y[na + k] = acc
    y = padded_y[na:]
    if not np.all(np.isfinite(y)):
        raise NumericalError("Simulation output overflowed; the system is unstable")
    return DiscreteSignal(y, u.sample_rate or 1.0 / tf.dt, u.start_index)


def impulse_response_z(tf: RationalTransferFunction, n: int) -> DiscreteSignal:
    """First `n` samples of the impulse response of a discrete system."""
    _check_domain(tf, Domain.Z)
    if n < 1:
        raise ArgumentError(f"Need at least one sample, got {n}")
    delta = np.zeros(n)
    delta[0] = 1.0
    return simulate(tf, DiscreteSignal(delta, 1.0 / tf.dt))


def cascade(first: RationalTransferFunction, second: RationalTransferFunction) -> RationalTransferFunction:
    """Series connection H₁·H₂."""
    if first.domain != second.domain or (first.dt is not None and not math.isclose(first.dt, second.dt)):
        raise ArgumentError("Cannot cascade transfer functions of different domains or sample periods")
    return RationalTransferFunction(
        np.convolve(first.b, second.b), np.convolve(first.a, second.a), first.domain, first.dt
    )


def with_unit_static_gain(tf: RationalTransferFunction) -> RationalTransferFunction:
    """Rescale the numerator so that the static gain is one."""
    gain = static_gain(tf)
    if gain == 0:
        raise DomainError("Cannot normalize a transfer function with zero static gain")
    return RationalTransferFunction(tf.b / gain, tf.a, tf.domain, tf.dt)


def complement(tf: RationalTransferFunction) -> RationalTransferFunction:
    """The complementary system 1 − H."""
    n = max(len(tf.a), len(tf.b))
    if tf.domain == Domain.S:
        a, b = np.pad(tf.a, (n - len(tf.a), 0)), np.pad(tf.b, (n - len(tf.b), 0))
    else:
        a, b = np.pad(tf.a, (0, n - len(tf.a))), np.pad(tf.b, (0, n - len(tf.b)))
    return RationalTransferFunction(a - b, tf.a, tf.domain, tf.dt)


def _check_simple(tf_poles: np.ndarray):
    """Reject repeated poles."""
    if len(tf_poles) < 2:
        return
    tol = 1e-8 * float(np.max(np.abs(tf_poles)))
    dist = np.abs(tf_poles[:, None] - tf_poles[None, :])
    np.fill_diagonal(dist, np.inf)
    if np.min(dist) <= tol:
        raise UnsupportedStructureError(f"Repeated poles are not supported: {tf_poles}")


def _residue_response(b: np.ndarray, a: np.ndarray, t) -> np.ndarray:
    """Inverse Laplace transform of a strictly proper B/A with simple poles, sampled on `t`."""
    b = _trim(np.asarray(b, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if len(b) == 0:
        return np.zeros_like(t)
    if len(b) >= len(a):
        raise ArgumentError(f"Residue expansion needs a strictly proper function, got deg(b)={len(b) - 1}")
    a_poles = _roots(a)
    _check_simple(a_poles)
    residues = np.polyval(b, a_poles) / np.polyval(np.polyder(a), a_poles)
    if np.any(a_poles.real * np.max(np.abs(t), initial=0.0) > MAX_EXP_ARG):
        raise NumericalError("Response overflows on the requested time grid")
    causal = t >= 0
    h = np.zeros(len(t), dtype=complex)
    h[causal] = np.exp(np.outer(t[causal], a_poles)) @ residues
    scale = max(1.0, float(np.max(np.abs(h.real))))
    if np.max(np.abs(h.imag)) >= 1e-9 * scale:
        raise NumericalError(f"Residue expansion is not real (imaginary part {np.max(np.abs(h.imag)):.3g})")
    return h.real


def impulse_response_s(tf: RationalTransferFunction, t_grid) -> np.ndarray:
    """
    Impulse response h(t) = Σ rₙ·exp(pₙt) of a strictly proper continuous system; zero for t < 0.

    Raises:
        ArgumentError: If the function is not strictly proper.
        UnsupportedStructureError: On repeated poles.
    """
    _check_domain(tf, Domain.S)
    return _residue_response(tf.b, tf.a, t_grid)


def forced_response_s(
    tf: RationalTransferFunction, input_tf: RationalTransferFunction, t_grid
) -> np.ndarray:
    """Response to an input with a rational Laplace transform, from rest."""
    _check_domain(tf, Domain.S)
    product = cascade(tf, input_tf)
    return _residue_response(product.b, product.a, t_grid)


def step_response_s(tf: RationalTransferFunction, t_grid) -> np.ndarray:
    """Unit step response, the residue expansion of H(s)/s."""
    return forced_response_s(tf, RationalTransferFunction([1.0], [1.0, 0.0], Domain.S), t_grid)


def prewarp(fc: float, fs: float) -> float:
    """
    Analog design frequency that the bilinear transform maps onto `fc`.

    f' = fs/π·tan(π·fc/fs), for 0 < fc < fs/2.
    """
    if not 0 < fc < fs / 2:
        raise ArgumentError(f"Pre-warp frequency {fc} Hz must lie in (0, {fs / 2}) Hz")
    return fs / math.pi * math.tan(math.pi * fc / fs)


def _check_dt(dt: float):
    if dt is None or not dt > 0:
        raise ArgumentError(f"Sample period must be positive, got {dt}")


def matched_z(tf: RationalTransferFunction, dt: float) -> RationalTransferFunction:
    """
    Matched-Z discretization z = exp(s·dt).

    Every pole and zero x maps to exp(x·dt); the relative degree adds zeros at z = -1. The gain matches the
    static gain, or the magnitude at a quarter of the sampling rate when H(s) has a pole or zero at s = 0.

    Raises:
        NumericalError: If exp(x·dt) overflows.
        UnsupportedStructureError: On repeated poles.
    """
    _check_domain(tf, Domain.S)
    _check_dt(dt)
    factored = zpk(tf)
    _check_simple(factored.poles)
    roots = np.concatenate((factored.zeros, factored.poles))
    if np.any(roots.real * dt > MAX_EXP_ARG):
        raise NumericalError(f"exp(x·dt) overflows for dt={dt}")
    zeros = np.concatenate((np.exp(factored.zeros * dt), -np.ones(len(factored.poles) - len(factored.zeros))))
    z_poles = np.exp(factored.poles * dt)
    unit = tf_from_zpk(ZeroPoleGain(zeros, z_poles, 1.0, Domain.Z, dt))
    on_origin = np.any(np.abs(roots) <= 1e-12)
    if on_origin:
        s0, z0 = 1j * math.pi / (2 * dt), 1j
        gain = abs(evaluate(tf, s0)) / abs(evaluate(unit, z0)) * np.sign(factored.gain)
        PrintUtil.debug(f"matched_z: gain matched at fs/4 (pole or zero at s=0), gain={gain}")
    else:
        gain = (evaluate(tf, 0.0) / evaluate(unit, 1.0)).real
    return RationalTransferFunction(unit.b * gain, unit.a, Domain.Z, dt)


def bilinear_zpk(factored: ZeroPoleGain, dt: float) -> ZeroPoleGain:
    """
    Bilinear map of a factored s-domain function, s = (2/dt)·(1 − z⁻¹)/(1 + z⁻¹).

    Each root x maps to (K + x)/(K − x) with K = 2/dt; the relative degree adds zeros at z = -1.
    """
    _check_dt(dt)
    k = 2.0 / dt
    roots = np.concatenate((factored.zeros, factored.poles))
    if np.any(np.abs(k - roots) == 0):
        raise NumericalError(f"A root at s = 2/dt = {k} maps to infinity")
    extra = len(factored.poles) - len(factored.zeros)
    if extra < 0:
        raise ArgumentError("Cannot discretize an improper transfer function")
    zeros = np.concatenate(((k + factored.zeros) / (k - factored.zeros), -np.ones(extra)))
    z_poles = (k + factored.poles) / (k - factored.poles)
    gain = factored.gain * np.real(np.prod(k - factored.zeros) / np.prod(k - factored.poles))
    return ZeroPoleGain(zeros, z_poles, gain, Domain.Z, dt)


def bilinear(tf: RationalTransferFunction, dt: float, prewarp_fc: float = None) -> RationalTransferFunction:
    """
    Bilinear (Tustin) discretization.

    With `prewarp_fc`, the analog response is first rescaled in frequency by fc/f', f' = prewarp(fc, 1/dt), so
    that the digital response at `prewarp_fc` equals the analog response there.
    """
    _check_domain(tf, Domain.S)
    _check_dt(dt)
    factored = zpk(tf)
    if prewarp_fc is not None:
        warped = prewarp(prewarp_fc, 1.0 / dt)
        c = prewarp_fc / warped
        # H(c·s) = c^(nz-np)·k·Π(s − z/c)/Π(s − p/c)
        factored = ZeroPoleGain(
            factored.zeros / c,
            factored.poles / c,
            factored.gain * c ** (len(factored.zeros) - len(factored.poles)),
            Domain.S,
        )
    return tf_from_zpk(bilinear_zpk(factored, dt))
