"""
Network data model: topology, trained weights, thresholds and the network file format

Weights of layer l are stored as an (N_{l-1}, N_l) matrix, so w[i, j] is the
synapse from presynaptic neuron i to neuron j.
"""
import json
import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.utils.exceptions import NetworkFormatError, ShapeError

logger = logging.getLogger(__name__)

RECTIFIER = "rectifier"
LINEAR = "linear"
ACTIVATIONS = (RECTIFIER, LINEAR)
DEFAULT_THRESHOLD = 1.0

_TOPOLOGY_RE = re.compile(r"^\d+(-\d+)+$")


@dataclass(frozen=True)
class NetworkTopology:
    """Ordered neuron counts N_0..N_L (input first, classes last)"""

    layer_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.layer_sizes)
        if len(sizes) < 2:
            raise ShapeError(f"topology needs at least 2 layers, got {len(sizes)}")
        if any(n < 1 for n in sizes):
            raise ShapeError(f"every layer needs at least one neuron: {sizes}")
        object.__setattr__(self, "layer_sizes", sizes)

    @property
    def depth(self) -> int:
        """Number of weight layers L"""
        return len(self.layer_sizes) - 1

    @property
    def n_inputs(self) -> int:
        return self.layer_sizes[0]

    @property
    def n_classes(self) -> int:
        return self.layer_sizes[-1]

    def size(self, layer: int) -> int:
        """N_l for l in 0..L"""
        return self.layer_sizes[layer]

    def synapses(self, layer: int) -> int:
        """Synapse count N_{l-1} * N_l feeding layer l (l >= 1)"""
        if not 1 <= layer <= self.depth:
            raise ShapeError(f"layer {layer} has no incoming synapses")
        return self.layer_sizes[layer - 1] * self.layer_sizes[layer]

    def __str__(self):
        return format_topology(self)


def parse_topology(text: str) -> NetworkTopology:
    """Parse the hyphen notation used in the result tables, e.g. "784-300-10" """
    text = text.strip()
    if not _TOPOLOGY_RE.match(text):
        raise ValueError(f"invalid topology string: {text!r} (expected e.g. 784-300-10)")
    return NetworkTopology(tuple(int(part) for part in text.split("-")))


def format_topology(topology: NetworkTopology) -> str:
    return "-".join(str(n) for n in topology.layer_sizes)


def neuron_count(topology: NetworkTopology) -> int:
    """Logical neurons that need hardware: layers 1..L (input neurons only forward)"""
    return sum(topology.layer_sizes[1:])


def synapse_count(topology: NetworkTopology) -> int:
    return sum(topology.synapses(l) for l in range(1, topology.depth + 1))


def default_activations(depth: int) -> tuple:
    return tuple([RECTIFIER] * (depth - 1) + [LINEAR])


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TrainedNetwork:
    """Topology + weight matrices + one firing threshold per layer"""

    topology: NetworkTopology
    weights: tuple
    thresholds: tuple = None
    activations: tuple = None

    def __post_init__(self):
        depth = self.topology.depth
        weights = tuple(_frozen(w) for w in self.weights)
        if len(weights) != depth:
            raise ShapeError(f"expected {depth} weight matrices, got {len(weights)}")
        for l, w in enumerate(weights, start=1):
            expected = (self.topology.size(l - 1), self.topology.size(l))
            if w.shape != expected:
                raise ShapeError(f"W_{l} has shape {w.shape}, topology requires {expected}")
            if not np.all(np.isfinite(w)):
                raise ValueError(f"W_{l} contains non-finite values")

        thresholds = self.thresholds
        if thresholds is None:
            thresholds = (DEFAULT_THRESHOLD,) * depth
        thresholds = tuple(float(t) for t in thresholds)
        if len(thresholds) != depth:
            raise ShapeError(f"expected {depth} thresholds, got {len(thresholds)}")
        if any(not (t > 0 and math.isfinite(t)) for t in thresholds):
            raise ValueError(f"thresholds must be positive and finite: {thresholds}")

        activations = self.activations or default_activations(depth)
        activations = tuple(str(a) for a in activations)
        if len(activations) != depth:
            raise ShapeError(f"expected {depth} activation tags, got {len(activations)}")
        unknown = set(activations) - set(ACTIVATIONS)
        if unknown:
            raise ValueError(f"unknown activation tags: {sorted(unknown)}")

        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "thresholds", thresholds)
        object.__setattr__(self, "activations", activations)

    @property
    def depth(self) -> int:
        return self.topology.depth

    def weight(self, layer: int) -> np.ndarray:
        """W_l for l in 1..L"""
        return self.weights[layer - 1]

    def threshold(self, layer: int) -> float:
        return self.thresholds[layer - 1]

    def with_thresholds(self, thresholds) -> "TrainedNetwork":
        return TrainedNetwork(self.topology, self.weights, tuple(thresholds), self.activations)

    def with_weights(self, weights) -> "TrainedNetwork":
        return TrainedNetwork(self.topology, tuple(weights), self.thresholds, self.activations)

    def __eq__(self, other):
        if not isinstance(other, TrainedNetwork):
            return NotImplemented
        return (
            self.topology == other.topology
            and self.thresholds == other.thresholds
            and self.activations == other.activations
            and all(np.array_equal(a, b) for a, b in zip(self.weights, other.weights))
        )

    __hash__ = None


def network_to_dict(net: TrainedNetwork) -> dict:
    return {
        "layer_sizes": list(net.topology.layer_sizes),
        "thresholds": list(net.thresholds),
        "activations": list(net.activations),
        # row-major, w[i * N_l + j] = w_ij
        "weights": [w.ravel(order="C").tolist() for w in net.weights],
    }


def network_from_dict(data: dict) -> TrainedNetwork:
    if not isinstance(data, dict):
        raise NetworkFormatError("network file must contain a JSON object")
    for key in ("layer_sizes", "thresholds", "activations", "weights"):
        if key not in data:
            raise NetworkFormatError(f"missing field: {key}")

    sizes = data["layer_sizes"]
    if not isinstance(sizes, list) or not all(isinstance(n, int) and not isinstance(n, bool) for n in sizes):
        raise NetworkFormatError("field 'layer_sizes' must be a list of integers")
    topology = NetworkTopology(tuple(sizes))

    thresholds = data["thresholds"]
    if not isinstance(thresholds, list) or not all(isinstance(t, (int, float)) for t in thresholds):
        raise NetworkFormatError("field 'thresholds' must be a list of numbers")
    activations = data["activations"]
    if not isinstance(activations, list) or not all(isinstance(a, str) for a in activations):
        raise NetworkFormatError("field 'activations' must be a list of strings")

    flat = data["weights"]
    if not isinstance(flat, list) or len(flat) != topology.depth:
        raise NetworkFormatError(f"field 'weights' must hold {topology.depth} arrays")
    weights = []
    for l, values in enumerate(flat, start=1):
        if not isinstance(values, list):
            raise NetworkFormatError(f"field 'weights[{l - 1}]' must be an array")
        rows, cols = topology.size(l - 1), topology.size(l)
        if len(values) != rows * cols:
            raise ShapeError(
                f"W_{l} holds {len(values)} values, topology {format_topology(topology)} "
                f"requires {rows}x{cols}={rows * cols}"
            )
        try:
            matrix = np.asarray(values, dtype=np.float64).reshape(rows, cols)
        except (TypeError, ValueError) as e:
            raise NetworkFormatError(f"field 'weights[{l - 1}]' holds non-numeric values") from e
        weights.append(matrix)

    return TrainedNetwork(topology, tuple(weights), tuple(thresholds), tuple(activations))


def save_network(net: TrainedNetwork, path) -> None:
    """Write the network as JSON; floats keep their shortest round-trip repr"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(network_to_dict(net), f)
    logger.info("Saved network %s to %s", format_topology(net.topology), path)


def load_network(path) -> TrainedNetwork:
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise NetworkFormatError(f"{path}: not valid JSON ({e})") from e
    net = network_from_dict(data)
    logger.debug("Loaded network %s from %s", format_topology(net.topology), path)
    return net


def memory_bits(topology: NetworkTopology, bits_per_weight: int) -> int:
    """Synaptic weight storage: bits_per_weight * sum_l N_{l-1} * N_l"""
    return int(bits_per_weight) * synapse_count(topology)


def memory_sweep_hidden_width(widths, n_inputs=784, n_classes=10, bits_per_weight=8) -> list:
    """Footprint of 3-layer classifiers n_inputs-N-n_classes for each hidden width N"""
    return [
        (int(n), memory_bits(NetworkTopology((n_inputs, int(n), n_classes)), bits_per_weight))
        for n in widths
    ]


def memory_sweep_hidden_depth(depths, width=1024, n_inputs=784, n_classes=10, bits_per_weight=8) -> list:
    """Footprint of classifiers with k hidden layers of `width` neurons for each k"""
    rows = []
    for k in depths:
        sizes = (n_inputs,) + (width,) * int(k) + (n_classes,)
        rows.append((int(k), memory_bits(NetworkTopology(sizes), bits_per_weight)))
    return rows
