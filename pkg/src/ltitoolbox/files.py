"""
Reading and writing of the CSV and JSON artifacts of the CLI.
"""

import csv
import json
import math

import jsonpickle
import numpy as np

from ltitoolbox.config import config
from ltitoolbox.errors import DataError
from ltitoolbox.model import DiscreteSignal, Domain, IdentifiedModel, RationalTransferFunction, SpectrumFrame
from ltitoolbox.utils import PrintUtil


def fmt(value: float) -> str:
    """Format a number with the configured significant digits."""
    return f"{float(value):.{config['float-digits'].get(int)}g}"


def _write_rows(path: str, header: list[str], rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    PrintUtil.debug(f"Wrote {path}")


def _read_rows(path: str, required: list[str]) -> tuple[list[str], np.ndarray]:
    """Header and numeric body of a CSV file."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration as e:
            raise DataError(f"{path}: empty file") from e
        missing = [c for c in required if c not in header]
        if missing:
            raise DataError(f"{path}: missing column(s) {', '.join(missing)}")
        try:
            body = np.array([[float(v) for v in row] for row in reader if row], dtype=float)
        except ValueError as e:
            raise DataError(f"{path}: {e}") from e
    if body.size == 0:
        raise DataError(f"{path}: no data rows")
    if body.shape[1] != len(header) or not np.all(np.isfinite(body)):
        raise DataError(f"{path}: malformed or non-finite values")
    return header, body


def write_signal(path: str, signal: DiscreteSignal):
    """Write a SignalFile with columns `k,t,value`; `t` only when the signal has a sample rate."""
    if signal.sample_rate is None:
        rows = ([str(k), fmt(v)] for k, v in zip(signal.indices, signal.samples))
        _write_rows(path, ["k", "value"], rows)
    else:
        t = signal.time_axis()
        rows = ([str(k), fmt(tk), fmt(v)] for k, tk, v in zip(signal.indices, t, signal.samples))
        _write_rows(path, ["k", "t", "value"], rows)


def read_signal(path: str) -> DiscreteSignal:
    """
    Read a SignalFile.

    The sample rate is recovered from the `t` column, if present.

    Raises:
        DataError: On missing columns, non-consecutive `k` or non-finite values.
    """
    header, body = _read_rows(path, ["k", "value"])
    k = body[:, header.index("k")]
    if np.any(k != np.round(k)) or np.any(np.diff(k) != 1):
        raise DataError(f"{path}: column k must hold consecutive integers")
    sample_rate = None
    if "t" in header and len(k) > 1:
        t = body[:, header.index("t")]
        span = t[-1] - t[0]
        if not span > 0:
            raise DataError(f"{path}: column t must be increasing")
        sample_rate = float(f"{(len(t) - 1) / span:.12g}")
    return DiscreteSignal(body[:, header.index("value")], sample_rate, int(k[0]))


def write_spectrum(path: str, spectrum: SpectrumFrame):
    """Write a spectrum with columns `n,f_hz,re,im,mag,phase`."""
    f = spectrum.frequencies_hz()
    rows = (
        [str(n), fmt(f[n]), fmt(b.real), fmt(b.imag), fmt(abs(b)), fmt(math.atan2(b.imag, b.real))]
        for n, b in enumerate(spectrum.bins)
    )
    _write_rows(path, ["n", "f_hz", "re", "im", "mag", "phase"], rows)


def read_spectrum(path: str, sample_rate: float = None) -> SpectrumFrame:
    """Read a spectrum CSV; the grid comes back in Hz."""
    header, body = _read_rows(path, ["n", "f_hz", "re", "im"])
    bins = body[:, header.index("re")] + 1j * body[:, header.index("im")]
    return SpectrumFrame(bins, body[:, header.index("f_hz")], "Hz", "unitary", sample_rate)


def write_taps(path: str, taps):
    """Write FIR taps as a single column `tap`."""
    _write_rows(path, ["tap"], ([fmt(v)] for v in taps))


def read_taps(path: str) -> np.ndarray:
    """Read a single-column taps file."""
    header, body = _read_rows(path, ["tap"])
    return body[:, header.index("tap")]


def write_scales(path: str, scales: list[DiscreteSignal]):
    """Write MRA scales with columns `k,scale_1..scale_M`."""
    header = ["k"] + [f"scale_{m + 1}" for m in range(len(scales))]
    rows = ([str(k)] + [fmt(s.samples[i]) for s in scales] for i, k in enumerate(scales[0].indices))
    _write_rows(path, header, rows)


def read_scales(path: str, sample_rate: float = None) -> list[DiscreteSignal]:
    """Read MRA scales; all of them start at the first `k` of the file."""
    header, body = _read_rows(path, ["k", "scale_1"])
    start = int(body[0, header.index("k")])
    return [DiscreteSignal(body[:, i], sample_rate, start) for i, h in enumerate(header) if h.startswith("scale_")]


def tf_to_dict(tf: RationalTransferFunction) -> dict:
    """Transfer function document `{domain, dt, b, a}`."""
    return {"domain": tf.domain.value, "dt": tf.dt, "b": [float(v) for v in tf.b], "a": [float(v) for v in tf.a]}


def tf_from_dict(data: dict) -> RationalTransferFunction:
    """Inverse of `tf_to_dict`."""
    try:
        return RationalTransferFunction(data["b"], data["a"], Domain(data["domain"]), data.get("dt"))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, DataError):
            raise
        raise DataError(f"Invalid transfer function document: {e}") from e


def write_tf(path: str, tf: RationalTransferFunction, extra: dict = None):
    """Write a transfer function JSON document, with optional extra fields."""
    data = tf_to_dict(tf)
    data.update(extra or {})
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    PrintUtil.debug(f"Wrote {path}")


def read_tf(path: str) -> RationalTransferFunction:
    """Read a transfer function JSON document."""
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise DataError(f"{path}: {e}") from e
    return tf_from_dict(data)


def write_model(path: str, model: IdentifiedModel, dt: float):
    """Write an identified model as a transfer function document with `w`, `n_b`, `n_a` and `alpha`."""
    tf = RationalTransferFunction(model.b, model.a, Domain.Z, dt)
    extra = {"w": [float(v) for v in model.w], "n_b": model.n_b, "n_a": model.n_a, "alpha": model.alpha}
    write_tf(path, tf, extra)


def write_report(path: str, report):
    """Write a diagnostics report."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(jsonpickle.encode(report, unpicklable=False, indent=2))
        f.write("\n")
    PrintUtil.debug(f"Wrote {path}")
