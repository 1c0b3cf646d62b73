"""
Command-line front-end: signal generation, filter design, filtering, analysis and identification with CSV/JSON
file I/O.

Exit codes: 0 on success, 1 on toolbox and file errors, 2 on usage errors.
"""

import argparse
import math
import sys

import numpy as np
import tomli
from easydict import EasyDict

from ltitoolbox import files, filters, lti, mra, signals, spectral, stochastic, sysid
from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError, ToolboxError
from ltitoolbox.model import (
    DiscreteSignal,
    Distribution,
    Domain,
    FrequencySplitting,
    NoiseSpec,
    RationalTransferFunction,
    StabilityClass,
    WindowKind,
)
from ltitoolbox.utils import NumUtil, Stopwatch
from ltitoolbox.utils import PrintUtil as PU
from ltitoolbox.utils import StringUtil as SU

GEN_KINDS = ["exercise1", "exercise5", "exercise6", "tone", "noise", "step", "delta"]
WINDOWS = [w.value for w in WindowKind]


def preset(name: str) -> EasyDict:
    """Parameters of an exercise from the configuration."""
    return EasyDict(config["exercises"][name].get(dict))


def exercise6_input(t: np.ndarray) -> np.ndarray:
    """Input u(t) = sin(8πt) + 3·exp(-(t-3)²/2) of the identification exercise."""
    return np.sin(8 * np.pi * t) + 3 * np.exp(-((t - 3) ** 2) / 2)


def exercise6_data(seed: int, noisy: bool = True) -> tuple[DiscreteSignal, DiscreteSignal]:
    """Input and output records of the identification exercise, optionally with uniform [0, 1) noise."""
    p = preset("exercise6")
    t = np.arange(p.n_t) * p.dt
    u = DiscreteSignal(exercise6_input(t), 1.0 / p.dt)
    y = lti.simulate(RationalTransferFunction(p.b, p.a, Domain.Z, p.dt), u)
    if noisy:
        y = y + stochastic.white_noise(NoiseSpec(seed), len(y))
    return u, y


def _load_filter(args) -> filters.FirDesign | RationalTransferFunction | np.ndarray:
    if args.taps:
        return files.read_taps(args.taps)
    if args.tf:
        return files.read_tf(args.tf)
    raise ArgumentError("Either --taps or --tf is required")


def cmd_gen(args):
    """Generate a signal file."""
    seed = args.seed if args.seed is not None else config["noise"]["seed"].get(int)
    if args.kind == "exercise1":
        p = preset("exercise1")
        u = signals.sample_continuous(
            lambda t: math.exp(-p.decay * t) * math.cos(2 * math.pi * p.frequency * t), p.fs, p.n_t, p.t0
        )
    elif args.kind == "exercise5":
        p = preset("exercise5")
        t = np.arange(p.n_t) / p.fs
        noise = NoiseSpec.gaussian(seed, 0.0, p.noise_sigma)
        u = stochastic.synthetic_signal(t, stochastic.exercise5_components(), noise, p.fs)
    elif args.kind == "exercise6":
        u, y = exercise6_data(seed, noisy=not args.clean)
        if args.out_y:
            files.write_signal(args.out_y, y)
            PU.success(f"Wrote output record to {args.out_y}")
    elif args.kind == "tone":
        fs = args.fs or 1.0
        t = np.arange(args.n) / fs
        u = DiscreteSignal(args.amp * np.sin(2 * np.pi * args.freq * t), fs)
    elif args.kind == "noise":
        spec = NoiseSpec(seed, Distribution(args.distribution), args.mu, args.sigma)
        u = stochastic.white_noise(spec, args.n)
        if args.fs:
            u = DiscreteSignal(u.samples, args.fs)
    else:
        u = signals.elementary(args.kind, args.n, args.k0)
        if args.fs:
            u = DiscreteSignal(u.samples, args.fs)
    files.write_signal(args.out, u)
    PU.success(f"Wrote {len(u)} samples of {args.kind} to {args.out}")


def cmd_fir_design(args):
    """Design a window-method low-pass FIR filter."""
    design = filters.firwin(args.order, args.fc, args.fs, args.window)
    files.write_taps(args.out, design.taps)
    PU.success(f"Wrote {design} to {args.out}")


def cmd_iir_design(args):
    """Design a Butterworth low-pass filter."""
    tf = filters.butterworth(args.order, args.fc, args.fs)
    files.write_tf(args.out, tf)
    PU.success(f"Wrote Butterworth filter of order {args.order} to {args.out}")


def cmd_freqz(args):
    """Frequency response of a filter or transfer function."""
    filt = _load_filter(args)
    if isinstance(filt, np.ndarray):
        if not args.fs:
            raise ArgumentError("--fs is required with --taps")
        filt = RationalTransferFunction(filt, [1.0], Domain.Z, 1.0 / args.fs)
    if filt.domain == Domain.S:
        grid = np.linspace(0.0, args.w_max, args.points)
    else:
        grid = np.pi * np.arange(args.points) / args.points
    files.write_spectrum(args.out, lti.freq_response(filt, grid))
    PU.success(f"Wrote {args.points} frequency response points to {args.out}")


def cmd_filter(args):
    """Causal filtering."""
    u = files.read_signal(args.input)
    files.write_signal(args.out, filters.apply(_load_filter(args), u))
    PU.success(f"Filtered {len(u)} samples to {args.out}")


def cmd_filtfilt(args):
    """Zero-phase filtering."""
    u = files.read_signal(args.input)
    filt = _load_filter(args)
    files.write_signal(args.out, filters.zero_phase(filt, u))
    PU.success(f"Filtered {len(u)} samples to {args.out} (edge: {filters.edge_samples(filt)} samples)")


def cmd_mra(args):
    """Multi-resolution decomposition."""
    u = files.read_signal(args.input)
    fs = args.fs or u.sample_rate
    if fs is None:
        raise ArgumentError("The signal has no sample rate; pass --fs")
    split = FrequencySplitting(NumUtil.parse_floats(args.split), fs, args.order, args.window)
    with Stopwatch("mra") as watch:
        scales = mra.decompose(u, split, args.workers)
    files.write_scales(args.out, scales)
    watch.print_duration()
    fractions = mra.band_energy_fractions(scales, (args.order - 1) // 2)
    for m, share in enumerate(fractions):
        PU.info(f"scale_{m + 1}: {100 * share:6.2f} % of the interior energy", 1)
    PU.success(f"Wrote {len(scales)} scales to {args.out}")


def cmd_reconstruct(args):
    """Sum MRA scales back into one signal."""
    scales = files.read_scales(args.input, args.fs)
    u = mra.reconstruct(scales)
    files.write_signal(args.out, u)
    PU.success(f"Reconstructed {len(u)} samples from {len(scales)} scales to {args.out}")


def cmd_simulate(args):
    """Run a difference equation."""
    tf = files.read_tf(args.tf)
    u = files.read_signal(args.input)
    files.write_signal(args.out, lti.simulate(tf, u))
    PU.success(f"Simulated {len(u)} samples to {args.out}")


def _time_grid(args) -> np.ndarray:
    return np.arange(int(round(args.t_end * args.fs)) + 1) / args.fs


def cmd_impulse(args):
    """Impulse response."""
    tf = files.read_tf(args.tf)
    if tf.domain == Domain.Z:
        h = lti.impulse_response_z(tf, args.n)
    else:
        h = DiscreteSignal(lti.impulse_response_s(tf, _time_grid(args)), args.fs)
    files.write_signal(args.out, h)
    PU.success(f"Wrote {len(h)} impulse response samples to {args.out}")


def cmd_step_response(args):
    """Step response."""
    tf = files.read_tf(args.tf)
    if tf.domain == Domain.Z:
        n = int(round(args.t_end / tf.dt)) + 1
        y = lti.simulate(tf, DiscreteSignal(np.ones(n), 1.0 / tf.dt))
    else:
        y = DiscreteSignal(lti.step_response_s(tf, _time_grid(args)), args.fs)
    files.write_signal(args.out, y)
    PU.success(f"Wrote {len(y)} step response samples to {args.out}")


def cmd_dft(args):
    """DFT or radix-2 FFT of a signal."""
    u = files.read_signal(args.input)
    if args.fft and args.pad:
        n = spectral.next_power_of_two(len(u))
        u = DiscreteSignal(np.pad(u.samples, (0, n - len(u))), u.sample_rate)
    if args.fft:
        t_fft, t_dft = spectral.compare_runtime(u) if args.compare else (None, None)
        frame = spectral.fft_pow2(u)
        if t_fft is not None:
            PU.note(f"fft: {t_fft:.6f} s, dft: {t_dft:.6f} s")
    else:
        frame = spectral.dft(u)
    files.write_spectrum(args.out, frame)
    PU.success(f"Wrote {len(frame)} bins to {args.out}")


def cmd_idft(args):
    """Inverse DFT or inverse radix-2 FFT of a spectrum."""
    frame = files.read_spectrum(args.input, args.fs)
    u = spectral.ifft_pow2(frame) if args.fft else spectral.idft(frame)
    files.write_signal(args.out, u)
    PU.success(f"Wrote {len(u)} samples to {args.out}")


def cmd_sysid(args):
    """Identify a model from input/output records."""
    u = files.read_signal(args.u)
    y = files.read_signal(args.y)
    model = sysid.identify(u, y, args.nb, args.na, args.alpha, args.drop_initial, args.solver)
    dt = u.dt or 1.0
    files.write_model(args.out, model, dt)
    if args.report:
        files.write_report(args.report, sysid.regression_report(model))
    stability = lti.is_stable(sysid.model_tf(model, dt))
    PU.info(f"b = {SU.bold(str(list(model.b)))}", 1)
    PU.info(f"a = {SU.bold(str(list(model.a)))}", 1)
    PU.info(f"residual = {model.residual_norm:.6g}, condition = {model.condition:.6g}, {stability.value}", 1)
    if stability != StabilityClass.STABLE:
        PU.warning(f"Identified model is {stability.value}", 1)
    PU.success(f"Wrote identified model to {args.out}")


def cmd_discretize(args):
    """Discretize a continuous transfer function."""
    tf = files.read_tf(args.tf)
    dt = 1.0 / args.fs
    if args.method == "matched":
        tf_z = lti.matched_z(tf, dt)
    else:
        tf_z = lti.bilinear(tf, dt, args.prewarp)
    files.write_tf(args.out, tf_z)
    PU.success(f"Wrote {args.method} discretization at {args.fs} Hz to {args.out}")


def print_info(args=None):
    """Prints the current configuration details."""
    try:
        with open("pyproject.toml", mode="rb") as file:
            version = tomli.load(file)["tool"]["poetry"]["version"]
    except FileNotFoundError:
        version = "unknown"
    PU.ln()
    PU.bold(f"  LTI Toolbox v{version}")
    PU.ln()
    PU.info(f"Data folder: {config['data'].get(str)}")
    PU.info(f"Log file: {config['file-log'].get(str)} ({config['log-level'].get(str)})")
    PU.info(f"Stability tolerance: {config['stability-tolerance'].get(float):g}")
    PU.info(f"MRA workers: {config['mra']['workers'].get(int)}")
    PU.info(f"Ridge solver: {config['sysid']['solver'].get(str)}")
    PU.info(f"Noise seed: {config['noise']['seed'].get(int)}")


def build_parser() -> argparse.ArgumentParser:
    """Command-line parser with one sub-command per pipeline stage."""
    parser = argparse.ArgumentParser(prog="lti-toolbox", description="SISO LTI systems toolbox")
    sub = parser.add_subparsers(dest="command", required=True)

    def filter_source(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--taps", help="FIR taps CSV")
        group.add_argument("--tf", help="transfer function JSON")

    p = sub.add_parser("gen", help="generate a signal")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--out", required=True)
    p.add_argument("--out-y", help="output record of exercise6")
    p.add_argument("--clean", action="store_true", help="exercise6 without noise")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--k0", type=int, default=0)
    p.add_argument("--fs", type=float)
    p.add_argument("--freq", type=float, default=1.0)
    p.add_argument("--amp", type=float, default=1.0)
    p.add_argument("--distribution", choices=[d.value for d in Distribution], default="uniform01")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fir-design", help="window-method low-pass FIR")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--fc", type=float, required=True)
    p.add_argument("--fs", type=float, required=True)
    p.add_argument("--window", choices=WINDOWS, default="hamming")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fir_design)

    p = sub.add_parser("iir-design", help="Butterworth low-pass")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--fc", type=float, required=True)
    p.add_argument("--fs", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_iir_design)

    p = sub.add_parser("freqz", help="frequency response")
    filter_source(p)
    p.add_argument("--fs", type=float)
    p.add_argument("--points", type=int, default=512)
    p.add_argument("--w-max", type=float, default=10.0, help="largest ω in rad/s for s-domain functions")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_freqz)

    for name, func, text in (("filter", cmd_filter, "causal filtering"), ("filtfilt", cmd_filtfilt, "zero-phase")):
        p = sub.add_parser(name, help=text)
        filter_source(p)
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("mra", help="multi-resolution decomposition")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--split", required=True, help="comma separated cut-off frequencies in Hz")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--window", choices=WINDOWS, default="hamming")
    p.add_argument("--fs", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mra)

    p = sub.add_parser("reconstruct", help="sum MRA scales")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--fs", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("simulate", help="run a difference equation")
    p.add_argument("--tf", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    for name, func in (("impulse", cmd_impulse), ("step-response", cmd_step_response)):
        p = sub.add_parser(name, help=f"{name} of a transfer function")
        p.add_argument("--tf", required=True)
        p.add_argument("--n", type=int, default=100, help="samples of a discrete response")
        p.add_argument("--t-end", type=float, default=5.0)
        p.add_argument("--fs", type=float, default=100.0, help="sampling of a continuous response")
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("dft", help="discrete Fourier transform")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--fft", action="store_true", help="radix-2 FFT")
    p.add_argument("--pad", action="store_true", help="zero-pad to a power of two")
    p.add_argument("--compare", action="store_true", help="time the FFT against the direct DFT")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dft)

    p = sub.add_parser("idft", help="inverse discrete Fourier transform")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--fft", action="store_true", help="inverse radix-2 FFT")
    p.add_argument("--fs", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_idft)

    p = sub.add_parser("sysid", help="ridge identification")
    p.add_argument("--u", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--nb", type=int, required=True)
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--drop-initial", action="store_true")
    p.add_argument("--solver", choices=[s.value for s in sysid.Solver])
    p.add_argument("--report", help="JSON diagnostics report")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sysid)

    p = sub.add_parser("discretize", help="s→z discretization")
    p.add_argument("--tf", required=True)
    p.add_argument("--fs", type=float, required=True)
    p.add_argument("--method", choices=["bilinear", "matched"], default="bilinear")
    p.add_argument("--prewarp", type=float, help="pre-warp frequency in Hz")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_discretize)

    p = sub.add_parser("info", help="version and configuration")
    p.set_defaults(func=print_info)
    return parser


def main(argv: list[str] = None) -> int:
    """Run a command; argparse exits with code 2 on usage errors."""
    args = build_parser().parse_args(argv)
    PU.debug(f"Command: {args.command}")
    try:
        args.func(args)
    except (ToolboxError, OSError) as e:
        PU.error(f"{args.command}: {type(e).__name__}: {e}".replace("\n", " "))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
