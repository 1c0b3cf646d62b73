"""
Multi-resolution decomposition of a signal into frequency bands with a zero-phase FIR filter bank.

All band filters share one order, hence one group delay, so that the band impulse responses telescope to a
delayed impulse and the scales add up to the input.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError
from ltitoolbox.filters import firwin, highpass_complement, zero_phase
from ltitoolbox.model import DiscreteSignal, FrequencySplitting
from ltitoolbox.utils import PrintUtil, Stopwatch


def band_impulse_responses(split: FrequencySplitting) -> list[np.ndarray]:
    """
    Impulse responses of the M bands.

    Scale 1 is the low-pass at f₁, scale m the difference of the low-passes at f_m and f_{m-1}, and scale M the
    complement of the low-pass at f_{M-1}.
    """
    lows = [firwin(split.filter_order, fc, split.sample_rate, split.window_kind).taps for fc in split.cutoffs]
    bands = [np.array(lows[0])]
    bands += [lows[m] - lows[m - 1] for m in range(1, len(lows))]
    bands.append(highpass_complement(lows[-1]))
    return bands


def decompose(u: DiscreteSignal, split: FrequencySplitting, workers: int = None) -> list[DiscreteSignal]:
    """
    Split a signal into M scales by zero-phase filtering with each band.

    Args:
        u (DiscreteSignal): Signal longer than the filter order.
        split (FrequencySplitting): Band edges and filter parameters.
        workers (int): Thread pool size; defaults to `mra.workers`. The scales do not depend on it.

    Returns:
        list[DiscreteSignal]: Scales ordered from the lowest band up.
    """
    if len(u) <= split.filter_order:
        raise ArgumentError(f"Signal of {len(u)} samples is not longer than the filter order {split.filter_order}")
    workers = workers or config["mra"]["workers"].get(int)
    bands = band_impulse_responses(split)
    with Stopwatch(f"MRA with {len(bands)} scales"):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                scales = list(executor.map(lambda h: zero_phase(h, u), bands))
        else:
            scales = [zero_phase(h, u) for h in bands]
    PrintUtil.log(f"Decomposed {len(u)} samples into {len(scales)} scales with {workers} worker(s)")
    return scales


def reconstruct(scales: list[DiscreteSignal]) -> DiscreteSignal:
    """Elementwise sum of the scales."""
    if not scales:
        raise ArgumentError("Nothing to reconstruct")
    if len({len(s) for s in scales}) != 1:
        raise ArgumentError("Scales have different lengths")
    return scales[0].with_samples(np.sum([s.samples for s in scales], axis=0))


def band_energy_fractions(scales: list[DiscreteSignal], edge: int = 0) -> np.ndarray:
    """Share of each scale in the total energy, ignoring `edge` samples at both ends."""
    n = len(scales[0])
    if 2 * edge >= n:
        raise ArgumentError(f"Edge of {edge} samples leaves no interior in {n} samples")
    energies = np.array([np.sum(s.samples[edge : n - edge] ** 2) for s in scales])
    total = np.sum(energies)
    return energies / total if total > 0 else energies
