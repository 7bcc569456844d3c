"""
Event-driven spiking inference and dataset profiling

One input event is one logical step: the spike enters layer 1, and whatever
each layer emits is delivered to the next layer within the same step, in
ascending source index. The selector is polled after every output spike;
the first decision is latched and the step in flight completes, so the
spikes entering layer l+1 always equal the spikes leaving layer l.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from tqdm import tqdm

from src.coding.encoders import encode
from src.coding.spike_select import apply_spike_select
from src.engine.neuron import integrate_spike
from src.engine.selectors import SelectorConfig, SelectorKind, poll
from src.models.coding import CodingScheme, SchemeTag, SpikeSelectConfig
from src.models.network import TrainedNetwork
from src.models.trace import (
    TERMINATED_BY_DELTA,
    TERMINATED_BY_MAX,
    TERMINATED_BY_WINDOW,
    ActivityTrace,
    SpikeProfile,
    SpikeTrainSet,
)
from src.preprocessing.mnist import Dataset
from src.utils.exceptions import ShapeError
from src.utils.workers import max_workers

logger = logging.getLogger(__name__)


class LayerState:
    """Membrane potentials of every layer plus the output spike counters"""

    def __init__(self, net: TrainedNetwork):
        self.potentials = [np.zeros(net.topology.size(l)) for l in range(1, net.depth + 1)]
        self.output_counts = np.zeros(net.topology.n_classes, dtype=np.int64)


def _propagate(net: TrainedNetwork, layer: int, potentials: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """Deliver spikes from layer-1 sources (ascending) to `layer`; return emitting neurons, sorted"""
    weights = net.weight(layer)
    theta = net.threshold(layer)
    emitted = []
    for i in sources:
        fired = integrate_spike(potentials, weights[i], theta)
        if fired.size:
            emitted.append(fired)
    if not emitted:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(emitted), kind="stable")


def run_inference(net: TrainedNetwork, train: SpikeTrainSet, selector: SelectorConfig,
                  state: LayerState = None):
    """
    Classify one input spike train

    Args:
        net: transcoded network
        train: input-layer spikes sorted by (time, neuron)
        selector: termination policy
        state: optional pre-allocated state; final potentials are left in it

    Returns:
        (class index, ActivityTrace)
    """
    if train.n_inputs != net.topology.n_inputs:
        raise ShapeError(f"spike train has {train.n_inputs} inputs, network expects {net.topology.n_inputs}")
    depth = net.depth
    state = state or LayerState(net)
    spikes_in = [0] * depth
    spikes_out = [0] * depth

    if len(train) == 0:
        trace = ActivityTrace(spikes_in, spikes_out, 0, train.window, TERMINATED_BY_WINDOW, no_input=True)
        return 0, trace

    decision = None
    terminated_by = TERMINATED_BY_WINDOW
    elapsed = train.window
    for time, neuron in zip(train.times.tolist(), train.neurons.tolist()):
        sources = np.array([neuron], dtype=np.int64)
        for l in range(1, depth + 1):
            spikes_in[l - 1] += sources.size
            sources = _propagate(net, l, state.potentials[l - 1], sources)
            spikes_out[l - 1] += sources.size
            if sources.size == 0:
                break
        if l == depth and sources.size:
            for j in sources.tolist():
                state.output_counts[j] += 1
                if decision is None:
                    decision = poll(state.output_counts, selector)
        if decision is not None:
            terminated_by = (
                TERMINATED_BY_DELTA if selector.kind == SelectorKind.TERMINATE_DELTA else TERMINATED_BY_MAX
            )
            elapsed = time
            break

    if decision is None:
        decision = int(np.argmax(state.output_counts))
    trace = ActivityTrace(spikes_in, spikes_out, int(decision), elapsed, terminated_by)
    return int(decision), trace


@dataclass
class ProfileResult:
    """Mean spike profile and accuracy of one coding scheme over a dataset"""

    scheme: CodingScheme
    profile: SpikeProfile
    accuracy: float
    n_samples: int
    traces: List[ActivityTrace] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.name,
            "accuracy": self.accuracy,
            "n_samples": self.n_samples,
            **self.profile.to_dict(),
        }


def network_for_scheme(net: TrainedNetwork, scheme: CodingScheme,
                       spike_select: SpikeSelectConfig = SpikeSelectConfig()) -> TrainedNetwork:
    """Spike Select runs on the network with its raised first threshold; other schemes use it as is"""
    if scheme.tag == SchemeTag.SPIKE_SELECT:
        return apply_spike_select(net, spike_select)
    return net


def _run_chunk(net, images, scheme, selector, seeds):
    traces = []
    for image, seed in zip(images, seeds):
        rng = np.random.default_rng(seed)
        _, trace = run_inference(net, encode(image, scheme, rng), selector)
        traces.append(trace)
    return traces


def profile_dataset(net: TrainedNetwork, dataset: Dataset, scheme: CodingScheme, selector: SelectorConfig,
                    seed: Optional[int] = None, spike_select: SpikeSelectConfig = SpikeSelectConfig(),
                    workers: int = 1, progress: bool = True, keep_traces: bool = False) -> ProfileResult:
    """
    Run inference over every sample and average the per-layer spike counts

    Every sample gets its own RNG stream spawned from the seed, so results
    do not depend on the worker count.

    Args:
        net: transcoded network (Spike Select is applied here when the scheme asks for it)
        dataset: samples to classify
        scheme: input coding scheme
        selector: termination policy
        seed: root seed, defaults to scheme.params.seed
        spike_select: threshold factor for the Spike Select scheme
        workers: process count (capped by SNN_DSE_THREADS)
        progress: show a tqdm bar
        keep_traces: keep every ActivityTrace in the result

    Returns:
        ProfileResult
    """
    if len(dataset) == 0:
        raise ValueError("cannot profile an empty dataset")
    run_net = network_for_scheme(net, scheme, spike_select)
    root = np.random.SeedSequence(scheme.params.seed if seed is None else seed)
    seeds = root.spawn(len(dataset))
    workers = min(max_workers(workers), len(dataset))

    if workers == 1:
        traces = []
        for image, child in tqdm(zip(dataset.images, seeds), total=len(dataset),
                                 desc=f"Profiling {scheme.name}", disable=not progress):
            traces.extend(_run_chunk(run_net, [image], scheme, selector, [child]))
    else:
        bounds = np.linspace(0, len(dataset), workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_run_chunk, run_net, dataset.images[lo:hi], scheme, selector, seeds[lo:hi])
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            traces = []
            for future in tqdm(futures, desc=f"Profiling {scheme.name}", disable=not progress):
                traces.extend(future.result())

    predictions = np.array([t.predicted_class for t in traces])
    accuracy = float(np.mean(predictions == dataset.labels))
    profile = SpikeProfile.from_traces(traces)
    logger.info("%s: accuracy %.4f over %d samples, spikes per layer %s",
                scheme.name, accuracy, len(dataset), [round(v, 2) for v in profile.mean_spikes_in])
    return ProfileResult(scheme, profile, accuracy, len(dataset), traces if keep_traces else [])
