"""
Input encoders: pixel intensities -> input-layer spike trains

Rate coding (Jittered Periodic) emits a train whose frequency follows the
pixel intensity; time coding (Single Burst, First Spike) emits one spike
whose emission time carries the value. Zero pixels stay silent.
"""
import logging

import numpy as np

from src.models.coding import CodingParams, CodingScheme, SchemeTag
from src.models.trace import SpikeTrainSet

logger = logging.getLogger(__name__)


def period_of(v: float, params: CodingParams) -> float:
    """p = 1 / (f_max + (1 - |v|) * (f_min - f_max))"""
    return 1.0 / (params.f_max + (1.0 - abs(v)) * (params.f_min - params.f_max))


def periods_of(values: np.ndarray, params: CodingParams) -> np.ndarray:
    values = np.abs(np.asarray(values, dtype=np.float64))
    return 1.0 / (params.f_max + (1.0 - values) * (params.f_min - params.f_max))


def deviations(period, params: CodingParams, rng: np.random.Generator, size=None) -> np.ndarray:
    """
    Jittered intervals around a period

    n ~ Normal(p, s_dev * p), clamped at 0, then dt ~ Uniform(0, 2n).
    E[dt] = p while the clamp is inactive.
    """
    period = np.asarray(period, dtype=np.float64)
    n = rng.normal(period, params.s_dev * period, size=size)
    n = np.maximum(n, 0.0)
    return rng.uniform(0.0, 1.0, size=n.shape) * 2.0 * n


def deviation(period: float, params: CodingParams, rng: np.random.Generator) -> float:
    if period <= 0:
        raise ValueError(f"period must be > 0, got {period}")
    return float(deviations(period, params, rng))


def _check_image(image) -> np.ndarray:
    image = np.asarray(image, dtype=np.float64).ravel()
    if image.size and (image.min() < 0 or image.max() > 1):
        raise ValueError("pixel values must lie in [0, 1]")
    return image


def encode_jittered_periodic(image, params: CodingParams, rng: np.random.Generator) -> SpikeTrainSet:
    """
    Rate coding with jittered inter-spike intervals

    Pixels are drawn in ascending index order; each pixel draws its intervals
    in batches sized from window / period until the cumulative time passes
    the window.
    """
    image = _check_image(image)
    times, neurons = [], []
    for pixel in np.flatnonzero(image):
        p = period_of(image[pixel], params)
        batch = int(np.ceil(params.window / p)) + 8
        elapsed = 0.0
        while True:
            arrivals = elapsed + np.cumsum(deviations(p, params, rng, size=batch))
            inside = arrivals[arrivals <= params.window]
            times.append(inside)
            neurons.append(np.full(inside.size, pixel, dtype=np.int64))
            if inside.size < batch:
                break
            elapsed = float(arrivals[-1])
    if not times:
        return SpikeTrainSet.empty(image.size, params.window)
    return SpikeTrainSet(np.concatenate(times), np.concatenate(neurons), image.size, params.window)


def encode_single_burst(image, params: CodingParams) -> SpikeTrainSet:
    """One spike per non-zero pixel at t = |1 - v| * window; brighter fires earlier"""
    image = _check_image(image)
    pixels = np.flatnonzero(image)
    times = np.abs(1.0 - image[pixels]) * params.window
    return SpikeTrainSet(times, pixels, image.size, params.window)


def encode_first_spike(image, params: CodingParams, rng: np.random.Generator) -> SpikeTrainSet:
    """
    One jittered spike per non-zero pixel, never earlier than t_min

    An emission later than the window is dropped.
    """
    image = _check_image(image)
    pixels = np.flatnonzero(image)
    if pixels.size == 0:
        return SpikeTrainSet.empty(image.size, params.window)
    times = np.maximum(deviations(periods_of(image[pixels], params), params, rng), params.t_min)
    kept = times <= params.window
    if not kept.all():
        logger.debug("First Spike: dropped %d emissions past the window", int((~kept).sum()))
    return SpikeTrainSet(times[kept], pixels[kept], image.size, params.window)


def encode(image, scheme: CodingScheme, rng: np.random.Generator) -> SpikeTrainSet:
    """Encode one image under a scheme; Spike Select uses the Jittered Periodic input"""
    tag = scheme.tag
    if tag in (SchemeTag.JITTERED_PERIODIC, SchemeTag.SPIKE_SELECT):
        return encode_jittered_periodic(image, scheme.params, rng)
    if tag == SchemeTag.SINGLE_BURST:
        return encode_single_burst(image, scheme.params)
    if tag == SchemeTag.FIRST_SPIKE:
        return encode_first_spike(image, scheme.params, rng)
    raise ValueError(f"unsupported coding scheme: {tag}")
